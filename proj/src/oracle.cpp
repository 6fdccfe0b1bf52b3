#include "forestmetrics/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <numeric>
#include <random>
#include <sstream>
#include <utility>

namespace forest {

namespace {

constexpr int kEnumerationLimit = 12;
constexpr int kBijectionLimit = 10;

void check_enumeration_size(int n, int limit) {
  if (n > limit) {
    std::ostringstream msg;
    msg << "brute-force enumeration is exponential and limited to n <= "
        << limit << " (got n=" << n
        << "); use the accessibility kernel for larger graphs";
    throw DomainError(msg.str());
  }
}

// Union-find without path compression so that unions can be undone in LIFO
// order during the subset walk.
class RollbackDsu {
 public:
  explicit RollbackDsu(int n) : parent_(n), rank_(n, 0) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }
  int find(int x) const {
    while (parent_[x] != x) x = parent_[x];
    return x;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (rank_[a] < rank_[b]) std::swap(a, b);
    log_.push_back({b, a, rank_[a]});
    parent_[b] = a;
    if (rank_[a] == rank_[b]) ++rank_[a];
    return true;
  }
  void undo() {
    const Entry& e = log_.back();
    parent_[e.child] = e.child;
    rank_[e.root] = e.root_rank;
    log_.pop_back();
  }

 private:
  struct Entry {
    int child;
    int root;
    int root_rank;
  };
  std::vector<int> parent_;
  std::vector<int> rank_;
  std::vector<Entry> log_;
};

// Trees of the forest held by the union-find state: vertices ascending
// within each tree, trees ordered by their smallest vertex.
std::vector<std::vector<int>> tree_groups(int n, const RollbackDsu& dsu) {
  std::vector<int> group_of(n, -1);
  std::vector<std::vector<int>> groups;
  for (int v = 0; v < n; ++v) {
    const int root = dsu.find(v);
    if (group_of[root] < 0) {
      group_of[root] = static_cast<int>(groups.size());
      groups.emplace_back();
    }
    groups[group_of[root]].push_back(v);
  }
  return groups;
}

// Visits every acyclic edge subset in ascending bitmask order (edge p is
// bit p); cyclic branches are pruned. The callback receives the chosen edge
// ids (descending) and the union-find state of the subset.
template <typename Visit>
void walk_forests(int n, const std::vector<Edge>& edges, Visit&& visit) {
  RollbackDsu dsu(n);
  std::vector<int> chosen;
  const int m = static_cast<int>(edges.size());
  auto rec = [&](auto&& self, int bit) -> void {
    if (bit < 0) {
      visit(chosen, dsu);
      return;
    }
    self(self, bit - 1);  // bit cleared first keeps masks ascending
    const Edge& e = edges[bit];
    if (dsu.unite(e.u, e.v)) {
      chosen.push_back(bit);
      self(self, bit - 1);
      chosen.pop_back();
      dsu.undo();
    }
  };
  rec(rec, m - 1);
}

Rational subset_weight(const std::vector<int>& chosen,
                       const std::vector<std::pair<Edge, Rational>>& edges) {
  Rational w = 1;
  for (int id : chosen) w *= edges[id].second;
  return w;
}

// Emits every choice of one root per tree, trees in order, candidate roots
// in vertex order; the last tree varies fastest.
template <typename Emit>
void for_each_rooting(const std::vector<std::vector<int>>& groups,
                      Emit&& emit) {
  std::vector<int> pick(groups.size(), 0);
  std::vector<int> roots(groups.size());
  while (true) {
    for (std::size_t c = 0; c < groups.size(); ++c) roots[c] = groups[c][pick[c]];
    emit(roots);
    int c = static_cast<int>(groups.size()) - 1;
    while (c >= 0) {
      if (++pick[c] < static_cast<int>(groups[c].size())) break;
      pick[c] = 0;
      --c;
    }
    if (c < 0) break;
  }
}

std::vector<Edge> endpoints_only(
    const std::vector<std::pair<Edge, Rational>>& edges) {
  std::vector<Edge> out;
  out.reserve(edges.size());
  for (const auto& [e, w] : edges) out.push_back(e);
  return out;
}

}  // namespace

std::vector<std::pair<Edge, Rational>> oracle_edge_list(
    const WeightedMultigraph& g, ParallelEdges mode) {
  std::vector<std::pair<Edge, Rational>> out;
  if (mode == ParallelEdges::keep) {
    for (const Edge& e : g.edges()) {
      const auto [lo, hi] = std::minmax(e.u, e.v);
      out.push_back({{lo, hi, e.weight}, Rational(e.weight)});
    }
    return out;
  }
  std::map<std::pair<int, int>, Rational> sums;
  for (const Edge& e : g.edges()) {
    const auto key = std::minmax(e.u, e.v);
    sums[{key.first, key.second}] += Rational(e.weight);
  }
  for (const auto& [key, w] : sums) {
    out.push_back({{key.first, key.second, w.convert_to<double>()}, w});
  }
  return out;
}

std::vector<RootedForest> enumerate_rooted_forests(const WeightedMultigraph& g,
                                                   ParallelEdges mode) {
  const int n = g.vertex_count();
  check_enumeration_size(n, kEnumerationLimit);
  const auto edges = oracle_edge_list(g, mode);
  const auto endpoints = endpoints_only(edges);
  std::vector<RootedForest> out;
  walk_forests(n, endpoints, [&](const std::vector<int>& chosen,
                                 const RollbackDsu& dsu) {
    std::vector<int> ids(chosen.rbegin(), chosen.rend());
    const Rational w = subset_weight(chosen, edges);
    const auto groups = tree_groups(n, dsu);
    for_each_rooting(groups, [&](const std::vector<int>& roots) {
      out.push_back({ids, roots, w});
    });
  });
  return out;
}

ConnectionVerdict connection_verdict(const WeightedMultigraph& g,
                                     const RootedForest& forest, int source,
                                     int target, ParallelEdges mode) {
  const int n = g.vertex_count();
  if (source < 0 || source >= n || target < 0 || target >= n)
    throw DomainError("vertex out of range");
  const auto edges = oracle_edge_list(g, mode);
  RollbackDsu dsu(n);
  for (int id : forest.edge_ids) {
    if (id < 0 || id >= static_cast<int>(edges.size()))
      throw DomainError("forest edge id out of range");
    if (!dsu.unite(edges[id].first.u, edges[id].first.v))
      throw DomainError("forest edge set contains a cycle");
  }
  const auto groups = tree_groups(n, dsu);
  if (groups.size() != forest.roots.size())
    throw DomainError("forest root count does not match its tree count");
  std::vector<int> group_of(n, -1);
  for (std::size_t c = 0; c < groups.size(); ++c)
    for (int v : groups[c]) group_of[v] = static_cast<int>(c);
  ConnectionVerdict verdict;
  verdict.forest = forest;
  verdict.source = source;
  verdict.target = target;
  verdict.successful = forest.roots[group_of[target]] == source;
  return verdict;
}

ExactAccessibility::ExactAccessibility(int n, Rational denominator,
                                       std::vector<Rational> numerators)
    : n_(n), den_(std::move(denominator)), num_(std::move(numerators)) {}

const Rational& ExactAccessibility::numerator(int i, int j) const {
  if (i < 0 || i >= n_ || j < 0 || j >= n_)
    throw DomainError("vertex out of range");
  return num_[static_cast<std::size_t>(i) * n_ + j];
}

Rational ExactAccessibility::value(int i, int j) const {
  return numerator(i, j) / den_;
}

ExactAccessibility forest_accessibility_exact_all(const WeightedMultigraph& g,
                                                  const Rational& alpha,
                                                  ParallelEdges mode) {
  const int n = g.vertex_count();
  check_enumeration_size(n, kEnumerationLimit);
  if (alpha <= 0) throw DomainError("alpha must be positive");
  auto edges = oracle_edge_list(g, mode);
  for (auto& [e, w] : edges) w *= alpha;  // forests of the alpha-scaled graph
  const auto endpoints = endpoints_only(edges);

  std::vector<Rational> num(static_cast<std::size_t>(n) * n, Rational(0));
  Rational den = 0;
  walk_forests(n, endpoints, [&](const std::vector<int>& chosen,
                                 const RollbackDsu& dsu) {
    const Rational w = subset_weight(chosen, edges);
    const auto groups = tree_groups(n, dsu);
    long long rootings = 1;
    for (const auto& t : groups) rootings *= static_cast<long long>(t.size());
    den += w * rootings;
    for (const auto& t : groups) {
      // forests where the tree holding i is rooted at i: the other trees
      // root anywhere
      const long long fixed_root = rootings / static_cast<long long>(t.size());
      const Rational contrib = w * fixed_root;
      for (std::size_t a = 0; a < t.size(); ++a)
        for (std::size_t b = a; b < t.size(); ++b)
          num[static_cast<std::size_t>(t[a]) * n + t[b]] += contrib;
    }
  });
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < i; ++j)
      num[static_cast<std::size_t>(i) * n + j] =
          num[static_cast<std::size_t>(j) * n + i];
  return ExactAccessibility(n, std::move(den), std::move(num));
}

Rational forest_accessibility_exact(const WeightedMultigraph& g,
                                    const Rational& alpha, int i, int j) {
  return forest_accessibility_exact_all(g, alpha).value(i, j);
}

Rational forest_distance_exact(const WeightedMultigraph& g,
                               const Rational& alpha, int i, int j) {
  const ExactAccessibility q = forest_accessibility_exact_all(g, alpha);
  return (q.value(i, i) + q.value(j, j) - q.value(i, j) - q.value(j, i)) / 2;
}

Rational total_forest_weight(const WeightedMultigraph& g,
                             const Rational& alpha) {
  const int n = g.vertex_count();
  check_enumeration_size(n, kEnumerationLimit);
  if (alpha <= 0) throw DomainError("alpha must be positive");
  auto edges = oracle_edge_list(g, ParallelEdges::aggregate);
  for (auto& [e, w] : edges) w *= alpha;
  const auto endpoints = endpoints_only(edges);
  Rational total = 0;
  walk_forests(n, endpoints, [&](const std::vector<int>& chosen,
                                 const RollbackDsu& dsu) {
    long long rootings = 1;
    for (const auto& t : tree_groups(n, dsu))
      rootings *= static_cast<long long>(t.size());
    total += subset_weight(chosen, edges) * rootings;
  });
  return total;
}

SimulationResult simulate_connection_model(const WeightedMultigraph& g,
                                           double alpha, int i, int j,
                                           long long samples,
                                           std::uint64_t seed) {
  const int n = g.vertex_count();
  check_enumeration_size(n, kEnumerationLimit);
  if (!(alpha > 0.0) || !std::isfinite(alpha))
    throw DomainError("alpha must be positive");
  if (i < 0 || i >= n || j < 0 || j >= n) throw DomainError("vertex out of range");
  if (i == j) throw DomainError("connection model needs distinct vertices");
  if (samples < 1) throw DomainError("samples must be positive");

  const auto edges = oracle_edge_list(g, ParallelEdges::aggregate);
  const auto endpoints = endpoints_only(edges);
  // Materialize the categorical distribution over spanning rooted forests of
  // the alpha-scaled graph, with the stage-3 verdict precomputed for both
  // directions.
  std::vector<long double> cumulative;
  std::vector<unsigned char> unsuccessful_from_i;
  std::vector<unsigned char> unsuccessful_from_j;
  long double total = 0.0L;
  walk_forests(n, endpoints, [&](const std::vector<int>& chosen,
                                 const RollbackDsu& dsu) {
    double w = std::pow(alpha, static_cast<double>(chosen.size()));
    for (int id : chosen) w *= edges[id].first.weight;
    const auto groups = tree_groups(n, dsu);
    std::vector<int> group_of(n, -1);
    for (std::size_t c = 0; c < groups.size(); ++c)
      for (int v : groups[c]) group_of[v] = static_cast<int>(c);
    const bool split = group_of[i] != group_of[j];
    for_each_rooting(groups, [&](const std::vector<int>& roots) {
      total += w;
      cumulative.push_back(total);
      unsuccessful_from_i.push_back(split && roots[group_of[i]] == i ? 1 : 0);
      unsuccessful_from_j.push_back(split && roots[group_of[j]] == j ? 1 : 0);
    });
  });

  std::mt19937_64 rng(seed);
  auto uniform01 = [&rng]() {
    return static_cast<long double>(rng() >> 11) * 0x1.0p-53L;
  };
  long long unsuccessful = 0;
  for (long long s = 0; s < samples; ++s) {
    const bool from_i = (rng() & 1ull) == 0;      // stage 1
    const long double u = uniform01() * total;    // stage 2
    const auto it =
        std::upper_bound(cumulative.begin(), cumulative.end(), u);
    const std::size_t idx = std::min(
        static_cast<std::size_t>(it - cumulative.begin()),
        cumulative.size() - 1);
    unsuccessful += from_i ? unsuccessful_from_i[idx]  // stage 3
                           : unsuccessful_from_j[idx];
  }
  SimulationResult result;
  result.samples = samples;
  result.estimate =
      static_cast<double>(unsuccessful) / static_cast<double>(samples);
  result.std_error = std::sqrt(result.estimate * (1.0 - result.estimate) /
                               static_cast<double>(samples));
  return result;
}

CheckResult forests_trees_bijection_check(const WeightedMultigraph& g) {
  const int n = g.vertex_count();
  check_enumeration_size(n, kBijectionLimit);
  const auto forests = enumerate_rooted_forests(g);
  const auto g_edges = oracle_edge_list(g, ParallelEdges::aggregate);

  const WeightedMultigraph ext = alpha_extension(g, 1.0);
  const auto ext_edges = oracle_edge_list(ext, ParallelEdges::aggregate);
  const auto ext_endpoints = endpoints_only(ext_edges);
  std::map<std::pair<int, int>, int> ext_index;
  for (std::size_t id = 0; id < ext_edges.size(); ++id)
    ext_index[{ext_edges[id].first.u, ext_edges[id].first.v}] =
        static_cast<int>(id);

  // Map each rooted forest to its tree in the 1-extension: keep the forest
  // edges, add one (source, root) edge per tree.
  std::map<std::uint64_t, Rational> mapped;
  Rational forest_total = 0;
  bool injective = true;
  for (const RootedForest& f : forests) {
    std::uint64_t mask = 0;
    for (int id : f.edge_ids) {
      const Edge& e = g_edges[id].first;
      mask |= 1ull << ext_index.at({e.u, e.v});
    }
    for (int r : f.roots) mask |= 1ull << ext_index.at({r, n});
    if (!mapped.emplace(mask, f.weight).second) injective = false;
    forest_total += f.weight;
  }

  std::map<std::uint64_t, Rational> trees;
  Rational tree_total = 0;
  walk_forests(n + 1, ext_endpoints, [&](const std::vector<int>& chosen,
                                         const RollbackDsu&) {
    if (static_cast<int>(chosen.size()) != n) return;  // spanning trees only
    std::uint64_t mask = 0;
    for (int id : chosen) mask |= 1ull << id;
    const Rational w = subset_weight(chosen, ext_edges);
    trees.emplace(mask, w);
    tree_total += w;
  });

  int mismatches = injective ? 0 : 1;
  for (const auto& [mask, w] : mapped) {
    const auto it = trees.find(mask);
    if (it == trees.end() || it->second != w) ++mismatches;
  }
  CheckResult check;
  check.passed = injective && mismatches == 0 &&
                 mapped.size() == trees.size() &&
                 forests.size() == trees.size() && forest_total == tree_total;
  check.max_defect = check.passed ? 0.0 : 1.0;
  std::ostringstream detail;
  detail << forests.size() << " rooted forests (total weight " << forest_total
         << ") <-> " << trees.size()
         << " spanning trees of the 1-extension (total weight " << tree_total
         << ")";
  if (!check.passed) detail << "; " << mismatches << " mapped subgraphs mismatched";
  check.detail = detail.str();
  return check;
}

}  // namespace forest
