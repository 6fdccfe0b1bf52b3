#include "forestmetrics/graph.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <numeric>
#include <sstream>
#include <string>

namespace forest {

WeightedMultigraph::WeightedMultigraph(int vertex_count) {
  if (vertex_count < 0) throw DomainError("vertex count must be nonnegative");
  n_ = vertex_count;
}

WeightedMultigraph::WeightedMultigraph(int vertex_count, std::vector<Edge> edges)
    : WeightedMultigraph(vertex_count) {
  for (const Edge& e : edges) add_edge(e.u, e.v, e.weight);
}

void WeightedMultigraph::add_edge(int u, int v, double weight) {
  if (u < 0 || u >= n_ || v < 0 || v >= n_)
    throw DomainError("edge endpoint out of range");
  if (u == v) throw DomainError("loop forbidden");
  if (!(weight > 0.0) || !std::isfinite(weight))
    throw DomainError("edge weight must be positive");
  edges_.push_back({u, v, weight});
}

double WeightedMultigraph::total_pair_weight(int u, int v) const {
  if (u < 0 || u >= n_ || v < 0 || v >= n_)
    throw DomainError("vertex out of range");
  double total = 0.0;
  for (const Edge& e : edges_) {
    if ((e.u == u && e.v == v) || (e.u == v && e.v == u)) total += e.weight;
  }
  return total;
}

namespace {

std::string strip(const std::string& line) {
  std::string s = line;
  auto hash = s.find('#');
  if (hash != std::string::npos) s.erase(hash);
  auto is_space = [](unsigned char c) { return std::isspace(c) != 0; };
  while (!s.empty() && is_space(s.front())) s.erase(s.begin());
  while (!s.empty() && is_space(s.back())) s.pop_back();
  return s;
}

}  // namespace

WeightedMultigraph parse_edge_list(std::istream& in) {
  std::string line;
  int lineno = 0;
  bool have_header = false;
  WeightedMultigraph g;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string s = strip(line);
    if (s.empty()) continue;
    if (!have_header) {
      std::size_t eq = s.find('=');
      if (eq == std::string::npos || strip(s.substr(0, eq)) != "n")
        throw ParseError(lineno, "expected header 'n=<count>', got '" + s + "'");
      long n = 0;
      try {
        std::size_t used = 0;
        n = std::stol(strip(s.substr(eq + 1)), &used);
        if (used != strip(s.substr(eq + 1)).size()) throw std::invalid_argument("");
      } catch (const std::exception&) {
        throw ParseError(lineno, "invalid vertex count in header '" + s + "'");
      }
      if (n < 0) throw ParseError(lineno, "vertex count must be nonnegative");
      g = WeightedMultigraph(static_cast<int>(n));
      have_header = true;
      continue;
    }
    std::istringstream iss(s);
    long u = 0, v = 0;
    double w = 0.0;
    std::string extra;
    if (!(iss >> u >> v >> w) || (iss >> extra))
      throw ParseError(lineno, "malformed edge line '" + s + "' (expected 'u v w')");
    if (u < 1 || u > g.vertex_count() || v < 1 || v > g.vertex_count())
      throw ParseError(lineno, "vertex label out of range 1.." +
                                   std::to_string(g.vertex_count()));
    if (u == v) throw ParseError(lineno, "loop forbidden");
    if (!(w > 0.0) || !std::isfinite(w))
      throw ParseError(lineno, "edge weight must be positive");
    g.add_edge(static_cast<int>(u) - 1, static_cast<int>(v) - 1, w);
  }
  if (!have_header) throw ParseError(lineno, "missing 'n=<count>' header");
  return g;
}

LaplacianMatrix build_laplacian(const WeightedMultigraph& g) {
  const int n = g.vertex_count();
  Eigen::MatrixXd l = Eigen::MatrixXd::Zero(n, n);
  for (const Edge& e : g.edges()) {
    l(e.u, e.v) -= e.weight;
    l(e.v, e.u) -= e.weight;
    l(e.u, e.u) += e.weight;
    l(e.v, e.v) += e.weight;
  }
  return {std::move(l)};
}

ComponentPartition components(const WeightedMultigraph& g) {
  const int n = g.vertex_count();
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  for (const Edge& e : g.edges()) {
    int a = find(e.u), b = find(e.v);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
  ComponentPartition parts;
  parts.assignment.assign(n, -1);
  for (int v = 0; v < n; ++v) {
    int root = find(v);
    if (parts.assignment[root] < 0) {
      parts.assignment[root] = static_cast<int>(parts.sizes.size());
      parts.sizes.push_back(0);
    }
    parts.assignment[v] = parts.assignment[root];
    ++parts.sizes[parts.assignment[v]];
  }
  return parts;
}

WeightedMultigraph alpha_scale(const WeightedMultigraph& g, double alpha) {
  if (!(alpha > 0.0) || !std::isfinite(alpha))
    throw DomainError("alpha must be positive");
  WeightedMultigraph out(g.vertex_count());
  for (const Edge& e : g.edges()) out.add_edge(e.u, e.v, e.weight * alpha);
  return out;
}

WeightedMultigraph alpha_extension(const WeightedMultigraph& g, double alpha) {
  if (!(alpha > 0.0) || !std::isfinite(alpha))
    throw DomainError("alpha must be positive");
  const int n = g.vertex_count();
  WeightedMultigraph out(n + 1);
  for (const Edge& e : g.edges()) out.add_edge(e.u, e.v, e.weight * alpha);
  for (int v = 0; v < n; ++v) out.add_edge(v, n, 1.0);
  return out;
}

std::vector<Edge> aggregate_parallel_edges(const WeightedMultigraph& g) {
  std::map<std::pair<int, int>, double> sums;
  for (const Edge& e : g.edges()) {
    auto key = std::minmax(e.u, e.v);
    sums[{key.first, key.second}] += e.weight;
  }
  std::vector<Edge> out;
  out.reserve(sums.size());
  for (const auto& [key, w] : sums) out.push_back({key.first, key.second, w});
  return out;
}

}  // namespace forest
