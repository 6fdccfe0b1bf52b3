#pragma once

// Deterministic random-instance builders shared by the unit and acceptance
// suites.

#include <random>
#include <vector>

#include "forestmetrics/graph.hpp"
#include "forestmetrics/perturbation.hpp"

namespace testgen {

// Weight p/q with q a power of two, so the double holds the rational
// exactly and the oracle's arithmetic stays small.
inline double rational_weight(std::mt19937_64& rng) {
  const int num = 1 + static_cast<int>(rng() % 8);
  const int den = 1 << (rng() % 4);
  return static_cast<double>(num) / static_cast<double>(den);
}

struct GraphOptions {
  int min_n = 1;
  int max_n = 7;
  bool ensure_connected = false;
  int max_extra_edges = 8;
  bool allow_parallel = true;
};

inline forest::WeightedMultigraph random_graph(std::mt19937_64& rng,
                                               const GraphOptions& opt) {
  const int span = opt.max_n - opt.min_n + 1;
  const int n = opt.min_n + static_cast<int>(rng() % span);
  forest::WeightedMultigraph g(n);
  if (n < 2) return g;
  if (opt.ensure_connected) {
    for (int v = 1; v < n; ++v)
      g.add_edge(v, static_cast<int>(rng() % v), rational_weight(rng));
  } else {
    // a partial tree leaves some vertices isolated
    for (int v = 1; v < n; ++v)
      if (rng() % 4 != 0)
        g.add_edge(v, static_cast<int>(rng() % v), rational_weight(rng));
  }
  const int extra = static_cast<int>(rng() % (opt.max_extra_edges + 1));
  for (int e = 0; e < extra; ++e) {
    const int u = static_cast<int>(rng() % n);
    int v = static_cast<int>(rng() % n);
    if (u == v) continue;
    if (!opt.allow_parallel && g.total_pair_weight(u, v) > 0.0) continue;
    g.add_edge(u, v, rational_weight(rng));
  }
  return g;
}

inline forest::WeightedMultigraph random_connected_graph(std::mt19937_64& rng,
                                                         int min_n, int max_n) {
  GraphOptions opt;
  opt.min_n = std::max(min_n, 1);
  opt.max_n = max_n;
  opt.ensure_connected = true;
  return random_graph(rng, opt);
}

// A valid single-edge delta for g: a positive weight on any pair, or a
// partial/full removal of an existing pair's weight.
inline forest::EdgeDelta random_delta(std::mt19937_64& rng,
                                      const forest::WeightedMultigraph& g) {
  const int n = g.vertex_count();
  forest::EdgeDelta delta;
  for (;;) {
    delta.k = static_cast<int>(rng() % n);
    delta.t = static_cast<int>(rng() % n);
    if (delta.k != delta.t) break;
  }
  const double available = g.total_pair_weight(delta.k, delta.t);
  const int kind = static_cast<int>(rng() % 4);
  if (available > 0.0 && kind == 0) {
    delta.eps = -available;  // full removal
  } else if (available > 0.0 && kind == 1) {
    delta.eps = -0.5 * available;  // partial removal
  } else {
    delta.eps = rational_weight(rng);
  }
  return delta;
}

// Small hand graphs used across the suites.
inline forest::WeightedMultigraph k2() {
  return forest::WeightedMultigraph(2, {{0, 1, 1.0}});
}

inline forest::WeightedMultigraph p3() {
  return forest::WeightedMultigraph(3, {{0, 1, 1.0}, {1, 2, 1.0}});
}

inline forest::WeightedMultigraph edgeless(int n) {
  return forest::WeightedMultigraph(n);
}

inline forest::WeightedMultigraph cycle(int n) {
  forest::WeightedMultigraph g(n);
  for (int v = 0; v < n; ++v) g.add_edge(v, (v + 1) % n, 1.0);
  return g;
}

inline forest::WeightedMultigraph complete(int n) {
  forest::WeightedMultigraph g(n);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) g.add_edge(u, v, 1.0);
  return g;
}

inline forest::WeightedMultigraph path(int n) {
  forest::WeightedMultigraph g(n);
  for (int v = 0; v + 1 < n; ++v) g.add_edge(v, v + 1, 1.0);
  return g;
}

inline forest::WeightedMultigraph star(int leaves) {
  forest::WeightedMultigraph g(leaves + 1);
  for (int v = 1; v <= leaves; ++v) g.add_edge(0, v, 1.0);
  return g;
}

// Disjoint union placing b after a.
inline forest::WeightedMultigraph disjoint_union(
    const forest::WeightedMultigraph& a, const forest::WeightedMultigraph& b) {
  forest::WeightedMultigraph g(a.vertex_count() + b.vertex_count());
  for (const auto& e : a.edges()) g.add_edge(e.u, e.v, e.weight);
  for (const auto& e : b.edges())
    g.add_edge(e.u + a.vertex_count(), e.v + a.vertex_count(), e.weight);
  return g;
}

}  // namespace testgen
