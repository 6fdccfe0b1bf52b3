#pragma once

#include <istream>
#include <vector>

#include <Eigen/Dense>

#include "forestmetrics/errors.hpp"

namespace forest {

// Undirected weighted multigraph. Parallel edges are kept as distinct
// entries; loops and non-positive weights are rejected. Vertices are
// 0-based indexes in the API; the text format and the CLI use 1-based
// labels.
struct Edge {
  int u = 0;
  int v = 0;
  double weight = 0.0;
};

class WeightedMultigraph {
 public:
  WeightedMultigraph() = default;
  explicit WeightedMultigraph(int vertex_count);
  WeightedMultigraph(int vertex_count, std::vector<Edge> edges);

  int vertex_count() const { return n_; }
  const std::vector<Edge>& edges() const { return edges_; }

  // Appends one parallel edge. Throws DomainError on a loop, an endpoint out
  // of range or a non-positive weight.
  void add_edge(int u, int v, double weight);

  // Total weight of all parallel edges between u and v.
  double total_pair_weight(int u, int v) const;

 private:
  int n_ = 0;
  std::vector<Edge> edges_;
};

// Parses the edge-list text format: '#' starts a comment, the first
// non-comment line is "n=<count>", every following line is "u v w" with
// 1-based labels and w > 0. Throws ParseError naming the offending line.
WeightedMultigraph parse_edge_list(std::istream& in);

// Symmetric matrix with zero row sums and non-positive off-diagonal entries.
struct LaplacianMatrix {
  Eigen::MatrixXd entries;
  int size() const { return static_cast<int>(entries.rows()); }
};

LaplacianMatrix build_laplacian(const WeightedMultigraph& g);

struct ComponentPartition {
  std::vector<int> assignment;  // vertex -> component id
  std::vector<int> sizes;       // component id -> vertex count
  int count() const { return static_cast<int>(sizes.size()); }
  bool same_component(int i, int j) const {
    return assignment[i] == assignment[j];
  }
};

// Connected components under edge adjacency; ids are assigned in order of
// each component's smallest vertex.
ComponentPartition components(const WeightedMultigraph& g);

// Multiplies every edge weight by alpha (alpha > 0).
WeightedMultigraph alpha_scale(const WeightedMultigraph& g, double alpha);

// Scales the original edges by alpha and joins every vertex to a new
// hidden-source vertex by a unit edge. The source is the last vertex of the
// result; external output prints it as label 0. The result is connected for
// every input.
WeightedMultigraph alpha_extension(const WeightedMultigraph& g, double alpha);

// Collapses parallel edges into one edge per vertex pair carrying the summed
// weight, sorted by (min endpoint, max endpoint).
std::vector<Edge> aggregate_parallel_edges(const WeightedMultigraph& g);

}  // namespace forest
