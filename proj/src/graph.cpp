#include "gslep/graph.hpp"

#include "gslep/csv.hpp"
#include "gslep/errors.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <utility>

namespace gslep {

Graph::Graph(int n_nodes, std::vector<Edge> edges)
    : n_nodes_(n_nodes), edges_(std::move(edges)) {
  if (n_nodes_ <= 0)
    throw ValidationError("graph needs at least one node");
  for (Edge &e : edges_) {
    if (e.i == e.j)
      throw ValidationError("self loop at node " + std::to_string(e.i));
    if (e.i < 0 || e.j < 0 || e.i >= n_nodes_ || e.j >= n_nodes_)
      throw ValidationError("edge (" + std::to_string(e.i) + ", " +
                            std::to_string(e.j) + ") is out of range for " +
                            std::to_string(n_nodes_) + " nodes");
    if (!(e.weight > 0.0) || !std::isfinite(e.weight))
      throw ValidationError("edge (" + std::to_string(e.i) + ", " +
                            std::to_string(e.j) +
                            ") has non-positive weight");
    if (e.i > e.j)
      std::swap(e.i, e.j);
  }
  std::sort(edges_.begin(), edges_.end(), [](const Edge &a, const Edge &b) {
    return std::pair(a.i, a.j) < std::pair(b.i, b.j);
  });
  for (std::size_t k = 1; k < edges_.size(); ++k)
    if (edges_[k - 1].i == edges_[k].i && edges_[k - 1].j == edges_[k].j)
      throw ValidationError("duplicate edge (" + std::to_string(edges_[k].i) +
                            ", " + std::to_string(edges_[k].j) + ")");
}

Eigen::VectorXd Graph::degrees() const {
  Eigen::VectorXd d = Eigen::VectorXd::Zero(n_nodes_);
  for (const Edge &e : edges_) {
    d[e.i] += e.weight;
    d[e.j] += e.weight;
  }
  return d;
}

Eigen::MatrixXd Graph::adjacency() const {
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n_nodes_, n_nodes_);
  for (const Edge &e : edges_) {
    a(e.i, e.j) = e.weight;
    a(e.j, e.i) = e.weight;
  }
  return a;
}

Graph load_edge_list(const std::filesystem::path &path,
                     std::optional<int> n_nodes) {
  auto lines = read_data_lines(path);
  std::vector<Edge> edges;
  edges.reserve(lines.size());
  int max_index = -1;
  for (const auto &[lineno, text] : lines) {
    const std::string context = path.string() + ":" + std::to_string(lineno);
    auto fields = split_fields(text);
    if (fields.size() != 2 && fields.size() != 3)
      throw ValidationError(context + ": expected 'i j [weight]', got " +
                            std::to_string(fields.size()) + " fields");
    Edge e;
    e.i = parse_int(fields[0], context);
    e.j = parse_int(fields[1], context);
    e.weight = fields.size() == 3 ? parse_double(fields[2], context) : 1.0;
    if (e.i < 0 || e.j < 0)
      throw ValidationError(context + ": negative node index");
    max_index = std::max({max_index, e.i, e.j});
    edges.push_back(e);
  }
  int n = max_index + 1;
  if (n_nodes) {
    if (*n_nodes < n)
      throw ValidationError(path.string() + ": node index " +
                            std::to_string(max_index) +
                            " exceeds declared node count " +
                            std::to_string(*n_nodes));
    n = *n_nodes;
  }
  if (n <= 0)
    throw ValidationError(path.string() + ": no edges and no node count");
  return Graph(n, std::move(edges));
}

Graph graph_from_triangles(int n_vertices,
                           const std::vector<std::array<int, 3>> &faces) {
  if (n_vertices <= 0)
    throw ValidationError("mesh needs at least one vertex");
  std::map<std::pair<int, int>, int> edge_use;
  for (std::size_t f = 0; f < faces.size(); ++f) {
    const auto &tri = faces[f];
    for (int v : tri)
      if (v < 0 || v >= n_vertices)
        throw ValidationError("face " + std::to_string(f) +
                              " references vertex " + std::to_string(v) +
                              " outside 0.." + std::to_string(n_vertices - 1));
    if (tri[0] == tri[1] || tri[1] == tri[2] || tri[0] == tri[2])
      throw ValidationError("face " + std::to_string(f) +
                            " repeats a vertex");
    for (int k = 0; k < 3; ++k) {
      int a = tri[k];
      int b = tri[(k + 1) % 3];
      if (a > b)
        std::swap(a, b);
      int &uses = edge_use[{a, b}];
      if (++uses > 2)
        throw ValidationError("edge (" + std::to_string(a) + ", " +
                              std::to_string(b) +
                              ") is shared by more than two faces");
    }
  }
  std::vector<Edge> edges;
  edges.reserve(edge_use.size());
  for (const auto &[key, uses] : edge_use)
    edges.push_back({key.first, key.second, 1.0});
  return Graph(n_vertices, std::move(edges));
}

namespace {

// Pull the next `count` numeric tokens from the flattened OFF body.
std::vector<std::string> take_tokens(std::vector<std::string> &tokens,
                                     std::size_t &pos, std::size_t count,
                                     const std::string &what,
                                     const std::filesystem::path &path) {
  if (pos + count > tokens.size())
    throw ValidationError(path.string() + ": truncated file while reading " +
                          what);
  std::vector<std::string> out(tokens.begin() + pos,
                               tokens.begin() + pos + count);
  pos += count;
  return out;
}

} // namespace

Graph load_mesh_off(const std::filesystem::path &path) {
  auto lines = read_data_lines(path);
  if (lines.empty())
    throw ValidationError(path.string() + ": empty OFF file");

  std::vector<std::string> tokens;
  for (const auto &[lineno, text] : lines)
    for (auto &tok : split_fields(text))
      tokens.push_back(tok);
  std::size_t pos = 0;
  if (pos < tokens.size() && tokens[pos] == "OFF")
    ++pos;
  else
    throw ValidationError(path.string() + ": missing OFF header");

  const std::string counts_ctx = path.string() + " counts line";
  auto counts = take_tokens(tokens, pos, 3, "counts", path);
  int n_vertices = parse_int(counts[0], counts_ctx);
  int n_faces = parse_int(counts[1], counts_ctx);
  int n_edges_declared = parse_int(counts[2], counts_ctx);
  (void)n_edges_declared;
  if (n_vertices <= 0)
    throw ValidationError(path.string() + ": vertex count must be positive");
  if (n_faces < 0)
    throw ValidationError(path.string() + ": negative face count");

  for (int v = 0; v < n_vertices; ++v) {
    auto coords = take_tokens(tokens, pos, 3, "vertices", path);
    for (const auto &c : coords)
      parse_double(c, path.string() + " vertex " + std::to_string(v));
  }

  std::vector<std::array<int, 3>> faces;
  faces.reserve(static_cast<std::size_t>(n_faces));
  for (int f = 0; f < n_faces; ++f) {
    const std::string ctx = path.string() + " face " + std::to_string(f);
    auto head = take_tokens(tokens, pos, 1, "faces", path);
    int nv = parse_int(head[0], ctx);
    if (nv != 3)
      throw ValidationError(ctx + ": only triangle faces are supported, got " +
                            std::to_string(nv) + " vertices");
    auto idx = take_tokens(tokens, pos, 3, "faces", path);
    faces.push_back({parse_int(idx[0], ctx), parse_int(idx[1], ctx),
                     parse_int(idx[2], ctx)});
  }
  if (pos != tokens.size())
    throw ValidationError(path.string() + ": trailing data after faces");
  return graph_from_triangles(n_vertices, faces);
}

Eigen::MatrixXd laplacian(const Graph &graph, LaplacianKind kind) {
  const int n = graph.n_nodes();
  Eigen::VectorXd deg = graph.degrees();
  Eigen::MatrixXd l = Eigen::MatrixXd::Zero(n, n);
  if (kind == LaplacianKind::Combinatorial) {
    for (const Edge &e : graph.edges()) {
      l(e.i, e.j) = -e.weight;
      l(e.j, e.i) = -e.weight;
    }
    l.diagonal() = deg;
    return l;
  }
  for (int i = 0; i < n; ++i)
    if (!(deg[i] > 0.0))
      throw ValidationError("normalized laplacian undefined: node " +
                            std::to_string(i) + " is isolated");
  Eigen::VectorXd inv_sqrt = deg.array().sqrt().inverse();
  for (const Edge &e : graph.edges()) {
    double v = -e.weight * inv_sqrt[e.i] * inv_sqrt[e.j];
    l(e.i, e.j) = v;
    l(e.j, e.i) = v;
  }
  l.diagonal().setOnes();
  return l;
}

bool check_connected(const Graph &graph) {
  const int n = graph.n_nodes();
  std::vector<std::vector<int>> adj(n);
  for (const Edge &e : graph.edges()) {
    adj[e.i].push_back(e.j);
    adj[e.j].push_back(e.i);
  }
  std::vector<char> seen(n, 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  int visited = 0;
  while (!stack.empty()) {
    int u = stack.back();
    stack.pop_back();
    ++visited;
    for (int v : adj[u])
      if (!seen[v]) {
        seen[v] = 1;
        stack.push_back(v);
      }
  }
  return visited == n;
}

} // namespace gslep
