#include "forestmetrics/metrics.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include <Eigen/Eigenvalues>

namespace forest {

namespace {

Eigen::MatrixXd distance_core(const Eigen::MatrixXd& q, double factor) {
  const int n = static_cast<int>(q.rows());
  Eigen::MatrixXd d(n, n);
  for (int i = 0; i < n; ++i) {
    d(i, i) = 0.0;
    for (int j = i + 1; j < n; ++j) {
      const double s = q(i, i) + q(j, j) - q(i, j) - q(j, i);
      d(i, j) = factor * s;
      d(j, i) = d(i, j);
    }
  }
  return d;
}

void check_pair(int n, int a, int b, const char* what) {
  if (a < 0 || a >= n || b < 0 || b >= n)
    throw DomainError(std::string(what) + " out of range");
  if (a == b) throw DomainError(std::string(what) + " must be distinct");
}

}  // namespace

DistanceMatrix forest_distance_matrix(const AccessibilityMatrix& q) {
  return {distance_core(q.q, 0.5), DistanceKind::forest, q.alpha};
}

DistanceMatrix adjusted_forest_distance_matrix(const AccessibilityMatrix& q) {
  return {distance_core(q.q, q.alpha), DistanceKind::adjusted_forest, q.alpha};
}

double cumulative_weight(const DistanceMatrix& rho, int i, int j) {
  if (rho.kind != DistanceKind::adjusted_forest)
    throw DomainError("cumulative weight requires adjusted forest distances");
  check_pair(rho.size(), i, j, "vertex pair");
  return 1.0 / rho.d(i, j) - 1.0 / (2.0 * rho.alpha);
}

ProfileVector tau_profile(const DistanceMatrix& d, int k, int t) {
  check_pair(d.size(), k, t, "profile anchors");
  return {d.d.col(k) - d.d.col(t), k, t, ProfileKind::tau};
}

ProfileVector pi_profile(const AccessibilityMatrix& q, int k, int t) {
  check_pair(q.size(), k, t, "profile anchors");
  return {q.q.col(k) - q.q.col(t), k, t, ProfileKind::pi};
}

double diameter(const DistanceMatrix& d) {
  const int n = d.size();
  if (n < 2) return 0.0;
  double best = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) best = std::max(best, d.d(i, j));
  return best;
}

double algebraic_connectivity(const LaplacianMatrix& l) {
  if (l.size() < 2)
    throw DomainError("algebraic connectivity requires at least two vertices");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(l.entries,
                                                        Eigen::EigenvaluesOnly);
  return solver.eigenvalues()(1);
}

const char* bound_name(PairBound b) {
  switch (b) {
    case PairBound::dist_le_one: return "d <= 1";
    case PairBound::rho_le_two_alpha: return "rho <= 2*alpha";
    case PairBound::dist_connectivity: return "d <= 1/(1 + alpha*a(G))";
    case PairBound::dist_pair_weight: return "d <= 1/(1 + 2*alpha*eps_ij)";
    case PairBound::rho_pair_weight: return "rho <= 1/(eps_ij + 1/(2*alpha))";
  }
  return "?";
}

BoundsReport bounds_report(const WeightedMultigraph& g,
                           const AccessibilityMatrix& q,
                           const DistanceMatrix& d, const DistanceMatrix& rho,
                           double tol) {
  const int n = g.vertex_count();
  if (q.size() != n || d.size() != n || rho.size() != n)
    throw DomainError("inconsistent matrix sizes in bounds report");
  if (d.kind != DistanceKind::forest ||
      rho.kind != DistanceKind::adjusted_forest)
    throw DomainError("bounds report expects forest d and adjusted rho");
  const double alpha = q.alpha;

  BoundsReport report;
  report.tolerance = tol;
  for (auto& m : report.slack) m = Eigen::MatrixXd::Zero(n, n);
  for (auto& s : report.stats)
    s.min_slack = std::numeric_limits<double>::infinity();
  if (n >= 2)
    report.algebraic_connectivity = algebraic_connectivity(build_laplacian(g));

  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double eij = g.total_pair_weight(i, j);
      double slack[BoundsReport::kBoundCount];
      slack[0] = 1.0 - d.d(i, j);
      slack[1] = 2.0 * alpha - rho.d(i, j);
      slack[2] = 1.0 / (1.0 + alpha * *report.algebraic_connectivity) - d.d(i, j);
      slack[3] = 1.0 / (1.0 + 2.0 * alpha * eij) - d.d(i, j);
      slack[4] = 1.0 / (eij + 1.0 / (2.0 * alpha)) - rho.d(i, j);
      for (int b = 0; b < BoundsReport::kBoundCount; ++b) {
        report.slack[b](i, j) = slack[b];
        report.slack[b](j, i) = slack[b];
        if (slack[b] < report.stats[b].min_slack) {
          report.stats[b].min_slack = slack[b];
          report.stats[b].worst_i = i;
          report.stats[b].worst_j = j;
        }
      }
    }
  }
  for (auto& s : report.stats) {
    if (!std::isfinite(s.min_slack)) s.min_slack = 0.0;  // n < 2: no pairs
    s.passed = s.min_slack >= -tol;
    report.passed = report.passed && s.passed;
  }
  return report;
}

MetricAxiomReport verify_metric_axioms(const Eigen::MatrixXd& d, double tol,
                                       bool force_triangle) {
  MetricAxiomReport report;
  const int n = static_cast<int>(d.rows());
  if (n == 0) {
    report.passed = true;
    report.detail = "empty matrix";
    return report;
  }
  report.min_entry = d.minCoeff();
  report.max_diagonal = d.diagonal().cwiseAbs().maxCoeff();
  report.max_asymmetry = (d - d.transpose()).cwiseAbs().maxCoeff();
  report.triangle_checked = n <= 200 || force_triangle;
  report.worst_triangle_defect = -std::numeric_limits<double>::infinity();
  if (report.triangle_checked) {
    for (int k = 0; k < n; ++k) {
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
          const double defect = d(i, j) - d(i, k) - d(k, j);
          if (defect > report.worst_triangle_defect) {
            report.worst_triangle_defect = defect;
            report.tri_i = i;
            report.tri_k = k;
            report.tri_j = j;
          }
        }
      }
    }
  } else {
    report.worst_triangle_defect = 0.0;
  }
  report.passed = report.min_entry >= -tol && report.max_diagonal <= tol &&
                  report.max_asymmetry <= tol &&
                  report.worst_triangle_defect <= tol;
  std::ostringstream detail;
  if (!report.triangle_checked) {
    detail << "triangle check skipped (n > 200)";
  } else if (report.worst_triangle_defect > tol) {
    // 1-based labels for the outside world
    detail << "triangle violated: d(" << report.tri_i + 1 << ","
           << report.tri_j + 1 << ") > d(" << report.tri_i + 1 << ","
           << report.tri_k + 1 << ") + d(" << report.tri_k + 1 << ","
           << report.tri_j + 1 << ") by " << report.worst_triangle_defect;
  } else {
    detail << "metric axioms hold within " << tol;
  }
  report.detail = detail.str();
  return report;
}

MetricAxiomReport verify_metric_axioms(const DistanceMatrix& d, double tol,
                                       bool force_triangle) {
  return verify_metric_axioms(d.d, tol, force_triangle);
}

}  // namespace forest
