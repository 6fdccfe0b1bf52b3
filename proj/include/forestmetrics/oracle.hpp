#pragma once

#include <cstdint>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "forestmetrics/check.hpp"
#include "forestmetrics/graph.hpp"

namespace forest {

// Exact arithmetic type of the brute-force oracle. Conversions from double
// are exact (every double is a rational).
using Rational = boost::multiprecision::cpp_rational;

// Whether the oracle collapses parallel edges before enumerating. Results
// are identical either way by multilinearity of forest weights; the
// aggregated form is the default and is cheaper.
enum class ParallelEdges { aggregate, keep };

// Spanning acyclic edge subset with one designated root per tree.
// edge_ids index the oracle's edge list for the graph (see
// oracle_edge_list); weight is the exact product of member edge weights.
struct RootedForest {
  std::vector<int> edge_ids;
  std::vector<int> roots;  // one per tree, trees ordered by smallest vertex
  Rational weight = 1;
};

// The edge list the oracle enumerates over: aggregated parallel edges with
// exact rational weights (or the raw edges when mode == keep).
std::vector<std::pair<Edge, Rational>> oracle_edge_list(
    const WeightedMultigraph& g,
    ParallelEdges mode = ParallelEdges::aggregate);

// Every spanning rooted forest of g: acyclic edge subsets in ascending
// bitmask order, rootings by component in vertex order. Exponential;
// guarded at n <= 12.
std::vector<RootedForest> enumerate_rooted_forests(
    const WeightedMultigraph& g,
    ParallelEdges mode = ParallelEdges::aggregate);

struct ConnectionVerdict {
  RootedForest forest;
  int source = 0;
  int target = 0;
  bool successful = false;  // target lies in the tree rooted at source
};

ConnectionVerdict connection_verdict(const WeightedMultigraph& g,
                                     const RootedForest& forest, int source,
                                     int target,
                                     ParallelEdges mode = ParallelEdges::aggregate);

// All exact accessibilities of one graph at one rational alpha, from a
// single enumeration pass over the forests of the alpha-scaled graph.
class ExactAccessibility {
 public:
  ExactAccessibility(int n, Rational denominator,
                     std::vector<Rational> numerators);
  int size() const { return n_; }
  const Rational& denominator() const { return den_; }
  const Rational& numerator(int i, int j) const;
  Rational value(int i, int j) const;  // q_ij as a normalized rational

 private:
  int n_;
  Rational den_;
  std::vector<Rational> num_;  // row-major n x n
};

ExactAccessibility forest_accessibility_exact_all(
    const WeightedMultigraph& g, const Rational& alpha,
    ParallelEdges mode = ParallelEdges::aggregate);

// q_ij of the alpha-scaled graph: (weight of forests where j lies in a tree
// rooted at i) / (total forest weight), in exact arithmetic.
Rational forest_accessibility_exact(const WeightedMultigraph& g,
                                    const Rational& alpha, int i, int j);

// (q_ii + q_jj - q_ij - q_ji)/2 in exact arithmetic.
Rational forest_distance_exact(const WeightedMultigraph& g,
                               const Rational& alpha, int i, int j);

// Total weight of all spanning rooted forests of the alpha-scaled graph;
// equals det(I + alpha*L).
Rational total_forest_weight(const WeightedMultigraph& g,
                             const Rational& alpha);

struct SimulationResult {
  double estimate = 0.0;   // fraction of unsuccessful connections
  double std_error = 0.0;  // binomial standard error
  long long samples = 0;
};

// The stochastic connection model: pick i or j with probability 1/2, pick a
// spanning rooted forest of the alpha-scaled graph with probability
// proportional to its weight, count the trial as unsuccessful when the
// chosen vertex roots a tree that misses the other vertex. The estimate
// converges to the forest distance d_ij. Deterministic per (seed, build).
SimulationResult simulate_connection_model(const WeightedMultigraph& g,
                                           double alpha, int i, int j,
                                           long long samples,
                                           std::uint64_t seed);

// Verifies the one-to-one correspondence between spanning rooted forests of
// g and spanning trees of its 1-extension: the explicit map (roots r of a
// forest <-> edges (source, r) of a tree) must be a weight-preserving
// bijection. Guarded at n <= 10.
CheckResult forests_trees_bijection_check(const WeightedMultigraph& g);

}  // namespace forest
