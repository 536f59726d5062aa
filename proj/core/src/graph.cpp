#include "sofic/graph.hpp"

#include "sofic/error.hpp"

#include <json.hpp>

#include <algorithm>
#include <numeric>

namespace sofic {

namespace {
const std::string kEmptyMark;

std::size_t find_root(std::vector<std::size_t>& parent, std::size_t x) {
  while (parent[x] != x) {
    parent[x] = parent[parent[x]];
    x = parent[x];
  }
  return x;
}
}  // namespace

Multigraph::Multigraph(std::size_t n, std::vector<Edge> e, std::vector<std::string> m)
    : vertex_count(n), edges(std::move(e)), marks(std::move(m)) {
  if (!marks.empty() && marks.size() != n) {
    throw InvalidArgument("Multigraph: marks must be empty or one per vertex");
  }
  for (const auto& edge : edges) {
    if (edge.tail >= n || edge.head >= n) {
      throw InvalidArgument("Multigraph: edge endpoint out of range");
    }
  }
}

const std::string& Multigraph::mark(VertexId v) const {
  return marks.empty() ? kEmptyMark : marks.at(v);
}

std::size_t Multigraph::degree(VertexId v) const {
  std::size_t d = 0;
  for (const auto& e : edges) {
    d += static_cast<std::size_t>(e.tail == v) + static_cast<std::size_t>(e.head == v);
  }
  return d;
}

std::size_t Multigraph::max_degree() const {
  std::vector<std::size_t> deg(vertex_count, 0);
  for (const auto& e : edges) {
    ++deg[e.tail];
    ++deg[e.head];
  }
  return deg.empty() ? 0 : *std::max_element(deg.begin(), deg.end());
}

std::size_t Multigraph::component_count() const {
  std::vector<std::size_t> parent(vertex_count);
  std::iota(parent.begin(), parent.end(), 0);
  std::size_t count = vertex_count;
  for (const auto& e : edges) {
    const auto a = find_root(parent, e.tail);
    const auto b = find_root(parent, e.head);
    if (a != b) {
      parent[a] = b;
      --count;
    }
  }
  return count;
}

bool Multigraph::is_connected() const { return vertex_count > 0 && component_count() == 1; }

std::vector<std::vector<std::pair<std::size_t, VertexId>>> Multigraph::incidence_lists() const {
  std::vector<std::vector<std::pair<std::size_t, VertexId>>> adj(vertex_count);
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const auto& e = edges[i];
    adj[e.tail].emplace_back(i, e.head);
    if (!e.is_loop()) adj[e.head].emplace_back(i, e.tail);
  }
  return adj;
}

Multigraph cycle_graph(std::size_t n) {
  if (n == 0) throw InvalidArgument("cycle_graph: n must be positive");
  std::vector<Edge> edges;
  for (std::size_t v = 0; v < n; ++v) {
    edges.push_back({static_cast<VertexId>(v), static_cast<VertexId>((v + 1) % n)});
  }
  return Multigraph(n, std::move(edges));
}

Multigraph path_graph(std::size_t n) {
  if (n == 0) throw InvalidArgument("path_graph: n must be positive");
  std::vector<Edge> edges;
  for (std::size_t v = 0; v + 1 < n; ++v) {
    edges.push_back({static_cast<VertexId>(v), static_cast<VertexId>(v + 1)});
  }
  return Multigraph(n, std::move(edges));
}

Multigraph complete_graph(std::size_t n) {
  std::vector<Edge> edges;
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = u + 1; v < n; ++v) {
      edges.push_back({static_cast<VertexId>(u), static_cast<VertexId>(v)});
    }
  }
  return Multigraph(n, std::move(edges));
}

Multigraph grid_graph(std::size_t rows, std::size_t cols) {
  if (rows == 0 || cols == 0) throw InvalidArgument("grid_graph: empty dimension");
  std::vector<Edge> edges;
  auto id = [cols](std::size_t r, std::size_t c) { return static_cast<VertexId>(r * cols + c); };
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      if (c + 1 < cols) edges.push_back({id(r, c), id(r, c + 1)});
      if (r + 1 < rows) edges.push_back({id(r, c), id(r + 1, c)});
    }
  }
  return Multigraph(rows * cols, std::move(edges));
}

Multigraph torus_graph(std::size_t rows, std::size_t cols) {
  if (rows == 0 || cols == 0) throw InvalidArgument("torus_graph: empty dimension");
  std::vector<Edge> edges;
  auto id = [cols](std::size_t r, std::size_t c) { return static_cast<VertexId>(r * cols + c); };
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      edges.push_back({id(r, c), id(r, (c + 1) % cols)});
      edges.push_back({id(r, c), id((r + 1) % rows, c)});
    }
  }
  return Multigraph(rows * cols, std::move(edges));
}

std::vector<VertexId> grid_boundary(std::size_t rows, std::size_t cols) {
  std::vector<VertexId> rim;
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      if (r == 0 || c == 0 || r + 1 == rows || c + 1 == cols) {
        rim.push_back(static_cast<VertexId>(r * cols + c));
      }
    }
  }
  return rim;
}

std::string with_coordinate(const std::string& mark, int bit) {
  return mark + ";" + std::to_string(bit);
}

std::string to_json(const Multigraph& g) {
  nlohmann::json j;
  j["vertex_count"] = g.vertex_count;
  auto edges = nlohmann::json::array();
  for (const auto& e : g.edges) edges.push_back({e.tail, e.head});
  j["edges"] = std::move(edges);
  j["marks"] = g.marks;
  return j.dump();
}

Multigraph multigraph_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& ex) {
    throw InvalidArgument(std::string("multigraph JSON: ") + ex.what());
  }
  for (const auto& [key, value] : j.items()) {
    if (key != "vertex_count" && key != "edges" && key != "marks") {
      throw InvalidArgument("multigraph JSON: unknown key '" + key + "'");
    }
  }
  try {
    std::vector<Edge> edges;
    for (const auto& e : j.at("edges")) {
      edges.push_back({e.at(0).get<VertexId>(), e.at(1).get<VertexId>()});
    }
    std::vector<std::string> marks;
    if (j.contains("marks")) marks = j["marks"].get<std::vector<std::string>>();
    return Multigraph(j.at("vertex_count").get<std::size_t>(), std::move(edges), std::move(marks));
  } catch (const nlohmann::json::exception& ex) {
    throw InvalidArgument(std::string("multigraph JSON: ") + ex.what());
  }
}

}  // namespace sofic
