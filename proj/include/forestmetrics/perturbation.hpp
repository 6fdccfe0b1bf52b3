#pragma once

#include <Eigen/Dense>

#include "forestmetrics/check.hpp"
#include "forestmetrics/graph.hpp"
#include "forestmetrics/kernel.hpp"
#include "forestmetrics/metrics.hpp"

namespace forest {

// Single-edge weight modification: eps > 0 adds a (k,t) edge of that weight,
// eps < 0 removes up to the total available (k,t) weight.
struct EdgeDelta {
  int k = 0;
  int t = 0;
  double eps = 0.0;
};

// Returns the modified graph. Throws DomainError when the removal exceeds
// the available (k,t) weight, for eps == 0 or for invalid endpoints.
WeightedMultigraph apply_edge_delta(const WeightedMultigraph& g,
                                    const EdgeDelta& delta);

// Closed-form increment of Q under an edge delta:
//   dq_ij = alpha*(q_ik - q_it)*(q_jt - q_jk) / (rho_kt + 1/eps).
// O(n^2) rank-one fill; never re-factors the linear system. Throws
// InternalError if the denominator vanishes (impossible for valid deltas).
Eigen::MatrixXd predict_q_increment(const AccessibilityMatrix& q,
                                    const DistanceMatrix& rho,
                                    const EdgeDelta& delta);

// Closed-form increment of the adjusted forest distances:
//   drho_ij = -(rho_ik - rho_it + rho_jt - rho_jk)^2 / (4*(rho_kt + 1/eps)).
// Depends only on rho entries and eps, not on alpha.
Eigen::MatrixXd predict_rho_increment(const DistanceMatrix& rho,
                                      const EdgeDelta& delta);

struct PerturbationResult {
  Eigen::MatrixXd delta_q;
  Eigen::MatrixXd delta_d;
  Eigen::MatrixXd delta_rho;
  double ratio = 0.0;  // common ratio 1/(1 + eps*rho_kt)
};

PerturbationResult predict_perturbation(const AccessibilityMatrix& q,
                                        const DistanceMatrix& rho,
                                        const EdgeDelta& delta);

// Q, d and rho of one graph at one alpha, bundled for before/after
// comparisons.
struct MetricState {
  WeightedMultigraph graph;
  AccessibilityMatrix q;
  DistanceMatrix d;
  DistanceMatrix rho;
};

MetricState compute_metric_state(const WeightedMultigraph& g, double alpha);

// Checks 1/rho'_kt - 1/rho_kt = eps, and for a unit addition additionally
// drho_kt = -rho_kt * rho'_kt.
CheckResult endpoint_reciprocal_identity(const DistanceMatrix& rho_before,
                                         const DistanceMatrix& rho_after,
                                         const EdgeDelta& delta, double tol);

// Returns the common ratio d'_kt/d_kt and asserts the whole chain
//   tau'_i/tau_i = pi'_i/pi_i = d'_kt/d_kt = rho'_kt/rho_kt
//     = 1/(1 + eps*rho_kt) = 1 - eps*rho'_kt
// in cross-multiplied form. Indices with a 0/0 quotient are skipped and
// counted. Throws PropertyViolation beyond tol; diagnostics, when given,
// receives the defect and skip count.
double profile_ratio(const MetricState& before, const MetricState& after,
                     int k, int t, double tol,
                     CheckResult* diagnostics = nullptr);

// Verifies (d'_ik - d'_it)/d'_kt = (d_ik - d_it)/d_kt and the analogous
// statement for q, for every i.
CheckResult proportionality_check(const MetricState& before,
                                  const MetricState& after, int k, int t,
                                  double tol);

// Verifies dq_ij = -alpha*eps*pi_i*pi_j*(d'_kt/d_kt)
//               = -alpha*eps*pi'_i*pi'_j*(d_kt/d'_kt)
// and the four equivalent forms of 2*dd_ij built from tau/pi differences.
CheckResult increment_formulas_check(const MetricState& before,
                                     const MetricState& after,
                                     const EdgeDelta& delta, double tol);

// Applies delta and its reverse; Q, d and rho must return to the originals
// and the two predicted increments must compose to zero.
CheckResult reciprocity_metamorphic_check(const WeightedMultigraph& g,
                                          double alpha, const EdgeDelta& delta,
                                          double tol);

}  // namespace forest
