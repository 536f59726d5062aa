#pragma once

#include "sofic/dpp.hpp"
#include "sofic/graph.hpp"
#include "sofic/linalg.hpp"
#include "sofic/rng.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace sofic {

// Edge subsets and kernels in this module are indexed by the edge space of a
// multigraph: its non-loop edges, in their original order, each carrying the
// stored (tail, head) as reference orientation.

/// Oriented edge space of a multigraph with its signed incidence matrix
/// (row per edge: -1 at the tail, +1 at the head).
struct OrientedEdgeSpace {
  std::size_t vertex_count = 0;
  std::vector<Edge> edges;
  std::vector<std::size_t> source_edge;  // index in the original edge list
  Matrix incidence;                      // |E| x |V|

  [[nodiscard]] std::size_t size() const noexcept { return edges.size(); }
  [[nodiscard]] std::vector<std::string> labels() const;
};

OrientedEdgeSpace edge_space(const Multigraph& graph);

/// Subspace of R^ambient held by an orthonormal basis.
struct Subspace {
  Eigen::Index ambient = 0;
  Matrix basis;  // ambient x dim, orthonormal columns

  [[nodiscard]] Eigen::Index dim() const noexcept { return basis.cols(); }
  [[nodiscard]] Matrix projection() const { return projection_onto(basis, ambient); }
  /// Distance of `v` from the subspace.
  [[nodiscard]] double distance(const Vector& v) const;
};

/// Orthonormal basis of the span of `vectors` (columns) by modified
/// Gram-Schmidt with re-orthogonalization; a column is kept when its residual
/// exceeds rank_tol times its norm.
Subspace orthonormal_span(const Matrix& vectors, double rank_tol = 1e-9);

struct GraphSpaces {
  Subspace star;   // row space of the incidence matrix
  Subspace cycle;  // its orthocomplement
};
GraphSpaces graph_spaces(const Multigraph& graph);

/// A simple cycle as (edge-space id, +1 when traversed tail to head, else -1).
using SignedCycle = std::vector<std::pair<std::size_t, int>>;

/// Default cycle enumeration budget.
inline constexpr std::size_t kCycleBudget = 1'000'000;

/// All simple cycles of length <= max_length (parallel edges give 2-cycles),
/// each reported once. Throws CapacityExceeded past `budget` cycles.
std::vector<SignedCycle> enumerate_cycles(const Multigraph& graph, std::size_t max_length,
                                          std::size_t budget = kCycleBudget);

/// Signed edge-indicator vector of a cycle.
Vector cycle_vector(const SignedCycle& cycle, std::size_t edge_count);

/// Span of the signed indicators of the simple cycles of length <= max_length.
Subspace bounded_cycle_space(const Multigraph& graph, std::size_t max_length,
                             std::size_t budget = kCycleBudget);

/// Span of the rows*cols unit squares of torus_graph(rows, cols); rows, cols >= 3.
/// Equals bounded_cycle_space(torus, 4) when rows, cols >= 5. On smaller tori the
/// wrap-around cycles of length <= 4 are not in this span.
Subspace torus_square_cycle_space(std::size_t rows, std::size_t cols);

/// Y = B L^+ B^T for a connected graph with at least one edge.
Matrix transfer_current(const Multigraph& graph);
/// Uniform spanning tree as a determinantal measure on the edge space.
DeterminantalMeasure ust_measure(const Multigraph& graph);

/// Uniform spanning tree via loop-erased random walks rooted at vertex 0.
/// Returns sorted edge-space ids.
std::vector<std::size_t> wilson_sample(const Multigraph& graph, Rng& rng);

/// Determinantal measure of I - P_{CYCLE_L}.
DeterminantalMeasure fsf_kernel(const Multigraph& graph, std::size_t max_length,
                                std::size_t budget = kCycleBudget);
/// Determinantal measure of I - P for a given cycle subspace.
DeterminantalMeasure cycle_complement_measure(const Multigraph& graph, const Subspace& cycles);

struct WiredGraph {
  Multigraph graph;
  std::vector<std::size_t> source_edge;  // original edge index per kept edge
  VertexId merged = 0;                   // index of the merged boundary vertex
};

/// Identifies the boundary to one vertex (index of its smallest member's
/// position); edges joining two distinct boundary vertices are dropped.
WiredGraph wired_contraction(const Multigraph& graph, std::span<const VertexId> boundary);

/// Length of the shortest cycle in the spanning subgraph on `edges`
/// (edge-space ids), or nullopt when it is a forest.
std::optional<std::size_t> subgraph_girth(std::span<const std::size_t> edges,
                                          const Multigraph& graph);
/// True iff the subgraph has no cycle of length <= max_length.
bool girth_check(std::span<const std::size_t> edges, const Multigraph& graph,
                 std::size_t max_length);

/// Whether `edges` (edge-space ids) form a spanning tree.
bool is_spanning_tree(std::span<const std::size_t> edges, const Multigraph& graph);

/// 2 * (sum of inclusion probabilities) / |V| for a measure on the edge space.
double expected_degree(const DeterminantalMeasure& measure, const Multigraph& graph);

/// Number of spanning trees by Kirchhoff's matrix-tree theorem (rounded).
double spanning_tree_count(const Multigraph& graph);

}  // namespace sofic
