#include "sofic/forests.hpp"

#include "sofic/error.hpp"
#include "sofic/operators.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <numeric>

namespace sofic {

std::vector<std::string> OrientedEdgeSpace::labels() const {
  std::vector<std::string> out;
  out.reserve(edges.size());
  for (std::size_t i = 0; i < edges.size(); ++i) {
    out.push_back("e" + std::to_string(i) + ":" + std::to_string(edges[i].tail) + "-" +
                  std::to_string(edges[i].head));
  }
  return out;
}

OrientedEdgeSpace edge_space(const Multigraph& graph) {
  OrientedEdgeSpace space;
  space.vertex_count = graph.vertex_count;
  for (std::size_t i = 0; i < graph.edges.size(); ++i) {
    if (graph.edges[i].is_loop()) continue;
    space.edges.push_back(graph.edges[i]);
    space.source_edge.push_back(i);
  }
  space.incidence = Matrix::Zero(static_cast<Eigen::Index>(space.edges.size()),
                                 static_cast<Eigen::Index>(graph.vertex_count));
  for (std::size_t i = 0; i < space.edges.size(); ++i) {
    const auto row = static_cast<Eigen::Index>(i);
    space.incidence(row, space.edges[i].tail) = -1.0;
    space.incidence(row, space.edges[i].head) = 1.0;
  }
  return space;
}

double Subspace::distance(const Vector& v) const {
  if (dim() == 0) return v.norm();
  return (v - basis * (basis.transpose() * v)).norm();
}

Subspace orthonormal_span(const Matrix& vectors, double rank_tol) {
  Subspace span;
  span.ambient = vectors.rows();
  std::vector<Vector> kept;
  for (Eigen::Index c = 0; c < vectors.cols(); ++c) {
    Vector v = vectors.col(c);
    const double norm0 = v.norm();
    if (norm0 == 0.0) continue;
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& q : kept) v -= q.dot(v) * q;
    }
    const double norm = v.norm();
    if (norm > rank_tol * norm0) kept.push_back(v / norm);
  }
  span.basis.resize(span.ambient, static_cast<Eigen::Index>(kept.size()));
  for (std::size_t i = 0; i < kept.size(); ++i) span.basis.col(static_cast<Eigen::Index>(i)) = kept[i];
  return span;
}

GraphSpaces graph_spaces(const Multigraph& graph) {
  const auto space = edge_space(graph);
  const auto m = static_cast<Eigen::Index>(space.size());
  GraphSpaces out;
  out.star.ambient = m;
  out.cycle.ambient = m;
  if (m == 0) {
    out.star.basis.resize(0, 0);
    out.cycle.basis.resize(0, 0);
    return out;
  }
  Eigen::BDCSVD<Matrix> svd(space.incidence, Eigen::ComputeFullU);
  const Vector& s = svd.singularValues();
  const double cutoff = 1e-9 * std::max(1.0, s.size() ? s[0] : 0.0);
  const auto rank = static_cast<Eigen::Index>((s.array() > cutoff).count());
  out.star.basis = svd.matrixU().leftCols(rank);
  out.cycle.basis = svd.matrixU().rightCols(m - rank);
  return out;
}

std::vector<SignedCycle> enumerate_cycles(const Multigraph& graph, std::size_t max_length,
                                          std::size_t budget) {
  const auto space = edge_space(graph);
  const std::size_t n = graph.vertex_count;
  // (edge id, neighbour, sign when leaving through it)
  struct Arc {
    std::size_t edge;
    VertexId to;
    int sign;
  };
  std::vector<std::vector<Arc>> adj(n);
  for (std::size_t i = 0; i < space.size(); ++i) {
    const auto& e = space.edges[i];
    adj[e.tail].push_back({i, e.head, +1});
    adj[e.head].push_back({i, e.tail, -1});
  }

  std::vector<SignedCycle> cycles;
  if (max_length < 2) return cycles;
  SignedCycle path;
  std::vector<char> on_path(n, 0);

  // cycles are rooted at their smallest vertex and reported in the direction
  // whose first edge id is smaller than the closing edge id
  auto dfs = [&](auto&& self, VertexId start, VertexId v) -> void {
    for (const auto& arc : adj[v]) {
      if (!path.empty() && arc.edge == path.back().first) continue;
      if (arc.to == start) {
        if (path.empty() || path.front().first >= arc.edge) continue;
        if (cycles.size() >= budget) {
          throw CapacityExceeded("enumerate_cycles: more than " + std::to_string(budget) + " cycles");
        }
        cycles.push_back(path);
        cycles.back().emplace_back(arc.edge, arc.sign);
        continue;
      }
      if (arc.to < start || on_path[arc.to] || path.size() + 2 > max_length) continue;
      on_path[arc.to] = 1;
      path.emplace_back(arc.edge, arc.sign);
      self(self, start, arc.to);
      path.pop_back();
      on_path[arc.to] = 0;
    }
  };
  for (VertexId s = 0; s < n; ++s) {
    on_path[s] = 1;
    dfs(dfs, s, s);
    on_path[s] = 0;
  }
  return cycles;
}

Vector cycle_vector(const SignedCycle& cycle, std::size_t edge_count) {
  Vector v = Vector::Zero(static_cast<Eigen::Index>(edge_count));
  for (const auto& [edge, sign] : cycle) v[static_cast<Eigen::Index>(edge)] += sign;
  return v;
}

Subspace bounded_cycle_space(const Multigraph& graph, std::size_t max_length, std::size_t budget) {
  const auto cycles = enumerate_cycles(graph, max_length, budget);
  const std::size_t m = edge_space(graph).size();
  Matrix vectors(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(cycles.size()));
  for (std::size_t c = 0; c < cycles.size(); ++c) {
    vectors.col(static_cast<Eigen::Index>(c)) = cycle_vector(cycles[c], m);
  }
  return orthonormal_span(vectors);
}

Subspace torus_square_cycle_space(std::size_t rows, std::size_t cols) {
  if (rows < 3 || cols < 3) throw InvalidArgument("torus_square_cycle_space: need rows, cols >= 3");
  const std::size_t m = 2 * rows * cols;
  // torus_graph stores per vertex v the edges 2v = (v, v+e_x), 2v+1 = (v, v+e_y)
  auto vid = [cols](std::size_t r, std::size_t c) { return r * cols + c; };
  Matrix vectors = Matrix::Zero(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(rows * cols));
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      const auto col = static_cast<Eigen::Index>(vid(r, c));
      const std::size_t right = vid(r, (c + 1) % cols);
      const std::size_t down = vid((r + 1) % rows, c);
      vectors(static_cast<Eigen::Index>(2 * vid(r, c)), col) += 1.0;   // (r,c) -> (r,c+1)
      vectors(static_cast<Eigen::Index>(2 * right + 1), col) += 1.0;   // (r,c+1) -> (r+1,c+1)
      vectors(static_cast<Eigen::Index>(2 * down), col) -= 1.0;        // (r+1,c) -> (r+1,c+1)
      vectors(static_cast<Eigen::Index>(2 * vid(r, c) + 1), col) -= 1.0;  // (r,c) -> (r+1,c)
    }
  }
  return orthonormal_span(vectors);
}

Matrix transfer_current(const Multigraph& graph) {
  if (!graph.is_connected()) throw InvalidArgument("transfer_current: graph is not connected");
  const auto space = edge_space(graph);
  if (space.size() == 0) throw InvalidArgument("transfer_current: graph has no edges");
  const auto n = static_cast<Eigen::Index>(graph.vertex_count);
  const Matrix& b = space.incidence;
  // for connected graphs L^+ = (L + J/n)^{-1} - J/n and B J = 0
  Matrix grounded = b.transpose() * b;
  grounded.array() += 1.0 / static_cast<double>(n);
  const Matrix solved = grounded.ldlt().solve(b.transpose());
  Matrix y = b * solved;
  return 0.5 * (y + y.transpose());
}

DeterminantalMeasure ust_measure(const Multigraph& graph) {
  return DeterminantalMeasure(transfer_current(graph), edge_space(graph).labels());
}

std::vector<std::size_t> wilson_sample(const Multigraph& graph, Rng& rng) {
  if (!graph.is_connected()) throw InvalidArgument("wilson_sample: graph is not connected");
  const auto space = edge_space(graph);
  const std::size_t n = graph.vertex_count;
  std::vector<std::vector<std::pair<std::size_t, VertexId>>> adj(n);
  for (std::size_t i = 0; i < space.size(); ++i) {
    adj[space.edges[i].tail].emplace_back(i, space.edges[i].head);
    adj[space.edges[i].head].emplace_back(i, space.edges[i].tail);
  }
  constexpr auto kNone = std::numeric_limits<std::size_t>::max();
  std::vector<char> in_tree(n, 0);
  std::vector<std::size_t> next_edge(n, kNone);
  std::vector<VertexId> next_vertex(n, 0);
  in_tree[0] = 1;
  std::vector<std::size_t> tree;
  for (VertexId start = 0; start < n; ++start) {
    VertexId u = start;
    while (!in_tree[u]) {
      const auto& [edge, to] = adj[u][rng.below(adj[u].size())];
      next_edge[u] = edge;
      next_vertex[u] = to;
      u = to;
    }
    u = start;
    while (!in_tree[u]) {
      in_tree[u] = 1;
      tree.push_back(next_edge[u]);
      u = next_vertex[u];
    }
  }
  std::sort(tree.begin(), tree.end());
  return tree;
}

DeterminantalMeasure cycle_complement_measure(const Multigraph& graph, const Subspace& cycles) {
  const auto space = edge_space(graph);
  const auto m = static_cast<Eigen::Index>(space.size());
  if (cycles.ambient != m) throw InvalidArgument("cycle subspace has the wrong ambient dimension");
  Matrix kernel = Matrix::Identity(m, m) - cycles.projection();
  kernel = 0.5 * (kernel + kernel.transpose());
  return DeterminantalMeasure(std::move(kernel), space.labels());
}

DeterminantalMeasure fsf_kernel(const Multigraph& graph, std::size_t max_length, std::size_t budget) {
  return cycle_complement_measure(graph, bounded_cycle_space(graph, max_length, budget));
}

WiredGraph wired_contraction(const Multigraph& graph, std::span<const VertexId> boundary) {
  if (boundary.empty()) throw InvalidArgument("wired_contraction: empty boundary");
  std::vector<char> in_boundary(graph.vertex_count, 0);
  for (auto v : boundary) {
    if (v >= graph.vertex_count) throw InvalidArgument("wired_contraction: vertex out of range");
    in_boundary[v] = 1;
  }
  const VertexId keeper = *std::min_element(boundary.begin(), boundary.end());
  std::vector<VertexId> image(graph.vertex_count);
  VertexId next = 0;
  for (VertexId v = 0; v < graph.vertex_count; ++v) {
    if (in_boundary[v] && v != keeper) continue;
    image[v] = next++;
  }
  for (VertexId v = 0; v < graph.vertex_count; ++v) {
    if (in_boundary[v]) image[v] = image[keeper];
  }
  WiredGraph out;
  out.merged = image[keeper];
  std::vector<std::string> marks;
  if (!graph.marks.empty()) {
    for (VertexId v = 0; v < graph.vertex_count; ++v) {
      if (!in_boundary[v] || v == keeper) marks.push_back(graph.marks[v]);
    }
  }
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < graph.edges.size(); ++i) {
    const auto& e = graph.edges[i];
    if (!e.is_loop() && in_boundary[e.tail] && in_boundary[e.head]) continue;
    edges.push_back({image[e.tail], image[e.head]});
    out.source_edge.push_back(i);
  }
  out.graph = Multigraph(next, std::move(edges), std::move(marks));
  return out;
}

std::optional<std::size_t> subgraph_girth(std::span<const std::size_t> edges,
                                          const Multigraph& graph) {
  const auto space = edge_space(graph);
  const std::size_t n = graph.vertex_count;
  std::vector<std::vector<std::pair<std::size_t, VertexId>>> adj(n);
  for (auto id : edges) {
    if (id >= space.size()) throw InvalidArgument("girth: edge id outside the edge space");
    adj[space.edges[id].tail].emplace_back(id, space.edges[id].head);
    adj[space.edges[id].head].emplace_back(id, space.edges[id].tail);
  }
  std::optional<std::size_t> best;
  std::vector<std::size_t> dist(n);
  constexpr auto kFar = std::numeric_limits<std::size_t>::max();
  for (auto id : edges) {
    // shortest path between the endpoints avoiding this edge
    const VertexId s = space.edges[id].tail;
    const VertexId t = space.edges[id].head;
    std::fill(dist.begin(), dist.end(), kFar);
    std::deque<VertexId> queue{s};
    dist[s] = 0;
    while (!queue.empty() && dist[t] == kFar) {
      const VertexId u = queue.front();
      queue.pop_front();
      if (best && dist[u] + 2 > *best) break;
      for (const auto& [e, w] : adj[u]) {
        if (e == id || dist[w] != kFar) continue;
        dist[w] = dist[u] + 1;
        queue.push_back(w);
      }
    }
    if (dist[t] != kFar && (!best || dist[t] + 1 < *best)) best = dist[t] + 1;
  }
  return best;
}

bool girth_check(std::span<const std::size_t> edges, const Multigraph& graph,
                 std::size_t max_length) {
  const auto girth = subgraph_girth(edges, graph);
  return !girth || *girth > max_length;
}

bool is_spanning_tree(std::span<const std::size_t> edges, const Multigraph& graph) {
  if (graph.vertex_count == 0 || edges.size() + 1 != graph.vertex_count) return false;
  const auto space = edge_space(graph);
  std::vector<Edge> chosen;
  for (auto id : edges) {
    if (id >= space.size()) return false;
    chosen.push_back(space.edges[id]);
  }
  return Multigraph(graph.vertex_count, std::move(chosen)).is_connected();
}

double expected_degree(const DeterminantalMeasure& measure, const Multigraph& graph) {
  if (measure.ground_size() != edge_space(graph).size()) {
    throw InvalidArgument("expected_degree: measure is not on the edge space of the graph");
  }
  return 2.0 * measure.expected_size() / static_cast<double>(graph.vertex_count);
}

double spanning_tree_count(const Multigraph& graph) {
  if (graph.vertex_count <= 1) return 1.0;
  const Matrix lap = graph_laplacian(graph);
  const Eigen::Index k = lap.rows() - 1;
  return std::round(lap.topLeftCorner(k, k).partialPivLu().determinant());
}

}  // namespace sofic
