#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace sofic {

using VertexId = std::uint32_t;

/// An edge as stored: (tail, head). Its orientation is the reference
/// orientation used by signed incidence vectors. tail == head is a loop.
struct Edge {
  VertexId tail = 0;
  VertexId head = 0;

  [[nodiscard]] bool is_loop() const noexcept { return tail == head; }
  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Finite undirected multigraph with vertex marks. Parallel edges and loops
/// are allowed; edges are identified by their index in `edges`.
struct Multigraph {
  std::size_t vertex_count = 0;
  std::vector<Edge> edges;
  std::vector<std::string> marks;  // empty or one per vertex

  Multigraph() = default;
  explicit Multigraph(std::size_t n, std::vector<Edge> e = {},
                      std::vector<std::string> m = {});

  [[nodiscard]] const std::string& mark(VertexId v) const;
  /// Degree with loops counted twice.
  [[nodiscard]] std::size_t degree(VertexId v) const;
  [[nodiscard]] std::size_t max_degree() const;
  [[nodiscard]] std::size_t component_count() const;
  [[nodiscard]] bool is_connected() const;
  /// Incident (edge index, other endpoint) pairs, loops listed once.
  [[nodiscard]] std::vector<std::vector<std::pair<std::size_t, VertexId>>>
  incidence_lists() const;

  friend bool operator==(const Multigraph&, const Multigraph&) = default;
};

Multigraph cycle_graph(std::size_t n);
Multigraph path_graph(std::size_t n);
Multigraph complete_graph(std::size_t n);
/// rows x cols grid; vertex (r, c) has index r * cols + c.
Multigraph grid_graph(std::size_t rows, std::size_t cols);
/// rows x cols torus with edges (v, v + e_x) then (v, v + e_y) per vertex;
/// vertex (r, c) has index r * cols + c.
Multigraph torus_graph(std::size_t rows, std::size_t cols);

/// Rim vertices of a rows x cols grid.
std::vector<VertexId> grid_boundary(std::size_t rows, std::size_t cols);

/// Mark with an extra coordinate, written "<mark>;<bit>".
std::string with_coordinate(const std::string& mark, int bit);

/// JSON {"vertex_count", "edges": [[t,h],...], "marks"}; sorted keys.
std::string to_json(const Multigraph& g);
Multigraph multigraph_from_json(const std::string& text);

}  // namespace sofic
