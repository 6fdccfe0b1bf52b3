#include "forestmetrics/resistance.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/Cholesky>

#include "forestmetrics/kernel.hpp"
#include "forestmetrics/metrics.hpp"

namespace forest {

Eigen::MatrixXd laplacian_pseudoinverse(const LaplacianMatrix& l,
                                        const ComponentPartition& parts) {
  const int n = l.size();
  if (static_cast<int>(parts.assignment.size()) != n)
    throw DomainError("component partition size does not match the Laplacian");
  Eigen::MatrixXd pinv = Eigen::MatrixXd::Zero(n, n);
  for (int c = 0; c < parts.count(); ++c) {
    std::vector<int> idx;
    for (int v = 0; v < n; ++v)
      if (parts.assignment[v] == c) idx.push_back(v);
    const int m = static_cast<int>(idx.size());
    if (m == 1) continue;  // pseudoinverse of a 1x1 zero block is zero
    Eigen::MatrixXd block(m, m);
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b) block(a, b) = l.entries(idx[a], idx[b]);
    // (L_c + J/m)^{-1} - J/m: the shift is invertible exactly on the
    // all-ones null direction of a connected component
    const Eigen::MatrixXd shift =
        Eigen::MatrixXd::Constant(m, m, 1.0 / static_cast<double>(m));
    Eigen::LLT<Eigen::MatrixXd> llt(block + shift);
    if (llt.info() != Eigen::Success)
      throw InternalError("SPD factorization of L_c + J/m failed");
    const Eigen::MatrixXd inv =
        llt.solve(Eigen::MatrixXd::Identity(m, m)) - shift;
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b) pinv(idx[a], idx[b]) = inv(a, b);
  }
  return pinv;
}

ExtendedDistanceMatrix resistance_distance_matrix(const WeightedMultigraph& g) {
  const int n = g.vertex_count();
  const ComponentPartition parts = components(g);
  const Eigen::MatrixXd pinv =
      laplacian_pseudoinverse(build_laplacian(g), parts);
  ExtendedDistanceMatrix out(n);
  for (int i = 0; i < n; ++i) {
    out.set(i, i, 0.0);
    for (int j = i + 1; j < n; ++j) {
      if (parts.same_component(i, j)) {
        const double r = pinv(i, i) + pinv(j, j) - pinv(i, j) - pinv(j, i);
        out.set(i, j, r);
        out.set(j, i, r);
      } else {
        out.set(i, j, ExtendedReal::infinity());
        out.set(j, i, ExtendedReal::infinity());
      }
    }
  }
  return out;
}

namespace {

std::vector<double> validated_grid(std::vector<double> grid, bool ascending) {
  if (grid.empty()) throw DomainError("alpha grid must not be empty");
  for (double a : grid)
    if (!(a > 0.0) || !std::isfinite(a))
      throw DomainError("alpha grid values must be positive");
  std::sort(grid.begin(), grid.end());
  if (!ascending) std::reverse(grid.begin(), grid.end());
  return grid;
}

}  // namespace

ConvergenceReport limit_small_alpha(const WeightedMultigraph& g,
                                    std::vector<double> alpha_grid) {
  const auto grid = validated_grid(std::move(alpha_grid), /*ascending=*/false);
  const int n = g.vertex_count();
  ConvergenceReport report;
  for (double alpha : grid) {
    const DistanceMatrix d = forest_distance_matrix(accessibility_matrix(g, alpha));
    double defect = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        const double limit = i == j ? 0.0 : 1.0;
        defect = std::max(defect, std::abs(d.d(i, j) - limit));
      }
    ConvergenceRow row;
    row.alpha = alpha;
    row.max_defect_d = defect;
    report.rows.push_back(row);
  }
  return report;
}

ConvergenceReport limit_large_alpha(const WeightedMultigraph& g,
                                    std::vector<double> alpha_grid) {
  const auto grid = validated_grid(std::move(alpha_grid), /*ascending=*/true);
  const int n = g.vertex_count();
  const ComponentPartition parts = components(g);
  const ExtendedDistanceMatrix rt = resistance_distance_matrix(g);
  bool has_cross = false;
  for (int i = 0; i < n && !has_cross; ++i)
    for (int j = i + 1; j < n && !has_cross; ++j)
      has_cross = !parts.same_component(i, j);

  ConvergenceReport report;
  for (double alpha : grid) {
    const AccessibilityMatrix q = accessibility_matrix(g, alpha);
    const DistanceMatrix d = forest_distance_matrix(q);
    const DistanceMatrix rho = adjusted_forest_distance_matrix(q);
    double defect_d = 0.0;
    double defect_rho = 0.0;
    double theta_cross = 0.0;
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        if (parts.same_component(i, j)) {
          defect_rho =
              std::max(defect_rho, std::abs(rho.d(i, j) - rt(i, j).value()));
          defect_d = std::max(defect_d, std::abs(d.d(i, j)));
        } else {
          const double limit =
              0.5 * (1.0 / parts.sizes[parts.assignment[i]] +
                     1.0 / parts.sizes[parts.assignment[j]]);
          defect_d = std::max(defect_d, std::abs(d.d(i, j) - limit));
          theta_cross =
              std::max(theta_cross, std::abs(cumulative_weight(rho, i, j)));
        }
      }
    }
    ConvergenceRow row;
    row.alpha = alpha;
    row.max_defect_d = defect_d;
    row.max_defect_rho = defect_rho;
    if (has_cross) row.theta_cross_max = theta_cross;
    report.rows.push_back(row);
  }
  return report;
}

CheckResult alpha_extension_identity_check(const WeightedMultigraph& g,
                                           double alpha, double tol) {
  const int n = g.vertex_count();
  const WeightedMultigraph ext = alpha_extension(g, alpha);
  const ExtendedDistanceMatrix rt = resistance_distance_matrix(ext);
  const DistanceMatrix d = forest_distance_matrix(accessibility_matrix(g, alpha));
  CheckResult check;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      // the extension is connected, so every restriction entry is finite
      const double defect = std::abs(rt(i, j).value() - 2.0 * d.d(i, j));
      check.max_defect = std::max(check.max_defect, defect);
    }
  }
  check.passed = check.max_defect <= tol;
  std::ostringstream detail;
  detail << "max |resistance(extension) - 2*d| = " << check.max_defect
         << " over " << n * (n - 1) / 2 << " pairs at alpha=" << alpha;
  check.detail = detail.str();
  return check;
}

}  // namespace forest
