#include "forestmetrics/kernel.hpp"

#include <cmath>
#include <sstream>

#include <Eigen/Cholesky>

namespace forest {

AccessibilityMatrix accessibility_matrix(const WeightedMultigraph& g,
                                         double alpha) {
  if (!(alpha > 0.0) || !std::isfinite(alpha))
    throw DomainError("alpha must be positive");
  const int n = g.vertex_count();
  if (n == 0) return {Eigen::MatrixXd(0, 0), alpha};
  const LaplacianMatrix l = build_laplacian(g);
  const Eigen::MatrixXd m =
      Eigen::MatrixXd::Identity(n, n) + alpha * l.entries;
  Eigen::LLT<Eigen::MatrixXd> llt(m);
  if (llt.info() != Eigen::Success) {
    // I + alpha*L is SPD for every valid input, so this indicates severe
    // ill-conditioning. Gershgorin gives a cheap condition estimate.
    const double lmax = 2.0 * l.entries.diagonal().maxCoeff();
    std::ostringstream msg;
    msg << "SPD factorization of I + alpha*L failed (alpha=" << alpha
        << ", condition estimate ~" << 1.0 + alpha * lmax << ")";
    throw InternalError(msg.str());
  }
  Eigen::MatrixXd q = llt.solve(Eigen::MatrixXd::Identity(n, n));
  return {std::move(q), alpha};
}

StochasticityReport validate_doubly_stochastic(const AccessibilityMatrix& q,
                                               double tol) {
  StochasticityReport report;
  report.tolerance = tol;
  const int n = q.size();
  if (n == 0) {
    report.passed = true;
    return report;
  }
  report.max_symmetry_defect =
      (q.q - q.q.transpose()).cwiseAbs().maxCoeff();
  report.min_entry = q.q.minCoeff();
  report.max_row_sum_defect =
      (q.q.rowwise().sum().array() - 1.0).abs().maxCoeff();
  report.passed = report.max_symmetry_defect <= tol &&
                  report.min_entry >= -tol &&
                  report.max_row_sum_defect <= tol;
  if (q.alpha >= 1e8) {
    report.warning =
        "alpha >= 1e8: I + alpha*L is ill-conditioned, defects may exceed "
        "the tolerance";
  }
  return report;
}

}  // namespace forest
