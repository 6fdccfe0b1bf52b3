#pragma once

#include <string>

#include <Eigen/Dense>

#include "forestmetrics/graph.hpp"

namespace forest {

// Relative forest accessibility matrix Q = (I + alpha*L)^{-1}. Symmetric,
// nonnegative and doubly stochastic up to roundoff.
struct AccessibilityMatrix {
  Eigen::MatrixXd q;
  double alpha = 0.0;
  int size() const { return static_cast<int>(q.rows()); }
};

// Solves (I + alpha*L) Q = I through a symmetric positive definite
// factorization (no explicit inversion). Throws DomainError for alpha <= 0
// and InternalError (with a condition estimate) if the factorization fails.
AccessibilityMatrix accessibility_matrix(const WeightedMultigraph& g,
                                         double alpha);

struct StochasticityReport {
  double max_symmetry_defect = 0.0;
  double min_entry = 0.0;
  double max_row_sum_defect = 0.0;
  double tolerance = 0.0;
  bool passed = false;
  std::string warning;  // set when conditioning may spoil the defects
};

// Reports the structural defects of Q: symmetry, entry nonnegativity and
// row sums. Passes iff all defects are within tol. Emits a conditioning
// warning for alpha >= 1e8 instead of refusing.
StochasticityReport validate_doubly_stochastic(const AccessibilityMatrix& q,
                                               double tol);

}  // namespace forest
