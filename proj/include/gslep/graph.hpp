#pragma once

#include <Eigen/Core>

#include <array>
#include <filesystem>
#include <optional>
#include <vector>

namespace gslep {

enum class LaplacianKind { Combinatorial, Normalized };

struct Edge {
  int i;
  int j;
  double weight;
};

/// Undirected weighted graph on nodes 0..n_nodes-1. Edges are canonicalized
/// to i < j and kept sorted; self loops, duplicate edges and non-positive
/// weights are rejected at construction.
class Graph {
public:
  Graph(int n_nodes, std::vector<Edge> edges);

  int n_nodes() const { return n_nodes_; }
  const std::vector<Edge> &edges() const { return edges_; }

  /// Weighted degree of every node.
  Eigen::VectorXd degrees() const;

  /// Dense symmetric adjacency matrix.
  Eigen::MatrixXd adjacency() const;

private:
  int n_nodes_;
  std::vector<Edge> edges_;
};

/// Load a graph from a whitespace separated edge list with lines
/// `i j [weight]`. Missing weights default to 1. Node count is inferred as
/// max index + 1 unless `n_nodes` overrides it.
Graph load_edge_list(const std::filesystem::path &path,
                     std::optional<int> n_nodes = std::nullopt);

/// Build a graph from the edges of a triangle mesh. Shared edges collapse to
/// one edge of weight 1; an edge used by more than two faces is an error.
Graph graph_from_triangles(int n_vertices,
                           const std::vector<std::array<int, 3>> &faces);

/// Load a triangle mesh in OFF format and return its edge graph.
Graph load_mesh_off(const std::filesystem::path &path);

/// Dense graph Laplacian. The combinatorial kind is degree matrix minus
/// adjacency; the normalized kind rescales it symmetrically by inverse square
/// root degrees and requires every degree to be positive.
Eigen::MatrixXd laplacian(const Graph &graph, LaplacianKind kind);

bool check_connected(const Graph &graph);

} // namespace gslep
