#pragma once

#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "forestmetrics/check.hpp"
#include "forestmetrics/graph.hpp"

namespace forest {

// A value on the extended real line [0, +inf]. +inf is an explicit state,
// never a float sentinel.
class ExtendedReal {
 public:
  ExtendedReal() = default;
  ExtendedReal(double v) : value_(v) {}  // NOLINT: implicit by design
  static ExtendedReal infinity() {
    ExtendedReal r;
    r.infinite_ = true;
    return r;
  }
  bool infinite() const { return infinite_; }
  // Finite value; calling this on +inf is a bug.
  double value() const { return value_; }

 private:
  double value_ = 0.0;
  bool infinite_ = false;
};

// Resistance distances: finite within components, +inf across them.
class ExtendedDistanceMatrix {
 public:
  explicit ExtendedDistanceMatrix(int n)
      : n_(n), cells_(static_cast<std::size_t>(n) * n) {}
  int size() const { return n_; }
  const ExtendedReal& operator()(int i, int j) const {
    return cells_[static_cast<std::size_t>(i) * n_ + j];
  }
  void set(int i, int j, ExtendedReal v) {
    cells_[static_cast<std::size_t>(i) * n_ + j] = v;
  }

 private:
  int n_;
  std::vector<ExtendedReal> cells_;
};

// Moore-Penrose pseudoinverse of the Laplacian, assembled blockwise per
// component via (L_c + J/m)^{-1} - J/m; zero across components.
Eigen::MatrixXd laplacian_pseudoinverse(const LaplacianMatrix& l,
                                        const ComponentPartition& parts);

// Resistance distance l+_ii + l+_jj - l+_ij - l+_ji within components,
// +inf across components.
ExtendedDistanceMatrix resistance_distance_matrix(const WeightedMultigraph& g);

struct ConvergenceRow {
  double alpha = 0.0;
  std::optional<double> max_defect_d;
  std::optional<double> max_defect_rho;
  std::optional<double> theta_cross_max;
};

struct ConvergenceReport {
  std::vector<ConvergenceRow> rows;
};

// Defect of the forest distances against the discrete metric (0 on the
// diagonal, 1 off it) along a decreasing alpha grid.
ConvergenceReport limit_small_alpha(const WeightedMultigraph& g,
                                    std::vector<double> alpha_grid);

// Along an increasing alpha grid: defect of rho against the resistance
// distance over within-component pairs, defect of d against its
// large-alpha limit (0 within a component, (1/|V_i| + 1/|V_j|)/2 across),
// and the largest cross-component cumulative weight (which tends to 0).
ConvergenceReport limit_large_alpha(const WeightedMultigraph& g,
                                    std::vector<double> alpha_grid);

// Verifies that the resistance distance on the alpha-extension restricted
// to the original vertices equals twice the forest distance on g.
CheckResult alpha_extension_identity_check(const WeightedMultigraph& g,
                                           double alpha, double tol);

}  // namespace forest
