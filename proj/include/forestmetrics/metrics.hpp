#pragma once

#include <array>
#include <optional>
#include <string>

#include <Eigen/Dense>

#include "forestmetrics/graph.hpp"
#include "forestmetrics/kernel.hpp"

namespace forest {

enum class DistanceKind { forest, adjusted_forest };

// Forest distance d(i,j) = (q_ii + q_jj - q_ij - q_ji)/2 or the adjusted
// variant rho = alpha*(q_ii + q_jj - q_ij - q_ji) = 2*alpha*d.
struct DistanceMatrix {
  Eigen::MatrixXd d;
  DistanceKind kind = DistanceKind::forest;
  double alpha = 0.0;
  int size() const { return static_cast<int>(d.rows()); }
};

DistanceMatrix forest_distance_matrix(const AccessibilityMatrix& q);
DistanceMatrix adjusted_forest_distance_matrix(const AccessibilityMatrix& q);

// Cumulative weight of connections theta(i,j) = 1/rho(i,j) - 1/(2*alpha).
// Defined only for distinct vertices and adjusted forest distances.
double cumulative_weight(const DistanceMatrix& rho, int i, int j);

enum class ProfileKind { tau, pi };

struct ProfileVector {
  Eigen::VectorXd values;
  int k = 0;
  int t = 0;
  ProfileKind kind = ProfileKind::tau;
};

// tau_i = d(i,k) - d(i,t) and pi_i = q(i,k) - q(i,t), for k != t.
ProfileVector tau_profile(const DistanceMatrix& d, int k, int t);
ProfileVector pi_profile(const AccessibilityMatrix& q, int k, int t);

// Greatest pairwise distance; 0 by convention for fewer than two vertices.
double diameter(const DistanceMatrix& d);

// Second-smallest eigenvalue of the Laplacian (full symmetric eigensolve).
// Requires at least two vertices.
double algebraic_connectivity(const LaplacianMatrix& l);

enum class PairBound {
  dist_le_one = 0,       // d_ij <= 1
  rho_le_two_alpha,      // rho_ij <= 2*alpha
  dist_connectivity,     // d_ij <= (1 + alpha*a(G))^{-1}
  dist_pair_weight,      // d_ij <= (1 + 2*alpha*eps_ij)^{-1}
  rho_pair_weight,       // rho_ij <= (eps_ij + (2*alpha)^{-1})^{-1}
};

const char* bound_name(PairBound b);

struct BoundsReport {
  static constexpr int kBoundCount = 5;
  struct Stat {
    double min_slack = 0.0;
    int worst_i = -1;
    int worst_j = -1;
    bool passed = true;
  };
  std::array<Eigen::MatrixXd, kBoundCount> slack;  // bound minus value
  std::array<Stat, kBoundCount> stats;
  std::optional<double> algebraic_connectivity;  // absent for n < 2
  double tolerance = 0.0;
  bool passed = true;
};

// Checks the five per-pair upper bounds on d and rho and records the slack
// of each. A bound passes at slack >= -tol.
BoundsReport bounds_report(const WeightedMultigraph& g,
                           const AccessibilityMatrix& q,
                           const DistanceMatrix& d, const DistanceMatrix& rho,
                           double tol = 1e-9);

struct MetricAxiomReport {
  bool passed = false;
  double min_entry = 0.0;
  double max_diagonal = 0.0;   // max |d_ii|
  double max_asymmetry = 0.0;
  double worst_triangle_defect = 0.0;  // max d(i,j) - d(i,k) - d(k,j)
  int tri_i = -1, tri_k = -1, tri_j = -1;
  bool triangle_checked = false;
  std::string detail;
};

// Verifies nonnegativity, zero diagonal, symmetry and the triangle
// inequality over all triples. The O(n^3) triangle sweep is skipped for
// n > 200 unless force_triangle is set.
MetricAxiomReport verify_metric_axioms(const Eigen::MatrixXd& d, double tol,
                                       bool force_triangle = false);
MetricAxiomReport verify_metric_axioms(const DistanceMatrix& d, double tol,
                                       bool force_triangle = false);

}  // namespace forest
