#pragma once

#include "sofic/graph.hpp"
#include "sofic/rng.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace sofic {

using SymbolId = std::size_t;

/// Ordered generator labels with a self-inverse involution i.
///
/// Words are written one character per letter; a letter names a symbol
/// directly, or, when no symbol has that name, the case-toggled letter names
/// a symbol s and the letter stands for i(s).
class GeneratorSet {
 public:
  GeneratorSet() = default;
  GeneratorSet(std::vector<std::string> symbols, std::vector<SymbolId> involution);

  /// k generators "s","t",... each paired with its uppercase inverse:
  /// symbols s,S,t,T,...; k <= 8.
  static GeneratorSet paired(std::size_t k);
  /// k self-inverse symbols "a","b",...; k <= 26.
  static GeneratorSet self_inverse(std::size_t k);

  [[nodiscard]] std::size_t size() const noexcept { return symbols_.size(); }
  [[nodiscard]] const std::vector<std::string>& symbols() const noexcept { return symbols_; }
  [[nodiscard]] const std::vector<SymbolId>& involution() const noexcept { return involution_; }
  [[nodiscard]] SymbolId inverse(SymbolId s) const { return involution_.at(s); }
  [[nodiscard]] std::optional<SymbolId> find(const std::string& name) const;
  [[nodiscard]] bool is_identity_involution() const;

  /// Symbol denoted by a word letter. Throws InvalidArgument when unknown.
  [[nodiscard]] SymbolId resolve_letter(char letter) const;
  [[nodiscard]] std::vector<SymbolId> resolve_word(const std::string& word) const;

  friend bool operator==(const GeneratorSet&, const GeneratorSet&) = default;

 private:
  std::vector<std::string> symbols_;
  std::vector<SymbolId> involution_;
};

/// Standard generator letter for generator j of Z^d or F_k: 's' + j.
char standard_letter(std::size_t j);

/// Finite S-labelled Schreier graph: per symbol a permutation v -> v.s with
/// v.s.i(s) = v, optional vertex marks and per (symbol, vertex) loop flags.
class SchreierGraph {
 public:
  SchreierGraph(GeneratorSet generators, std::vector<std::vector<VertexId>> actions,
                std::vector<std::string> vertex_marks = {},
                std::vector<std::vector<std::uint8_t>> loop_flags = {});

  [[nodiscard]] std::size_t vertex_count() const noexcept { return vertex_count_; }
  [[nodiscard]] const GeneratorSet& generators() const noexcept { return generators_; }
  [[nodiscard]] VertexId act(VertexId v, SymbolId s) const { return actions_[s][v]; }
  /// v.w for a word given as symbol ids, applied left to right.
  [[nodiscard]] VertexId act(VertexId v, std::span<const SymbolId> word) const;
  [[nodiscard]] const std::vector<std::vector<VertexId>>& actions() const noexcept {
    return actions_;
  }
  [[nodiscard]] const std::string& mark(VertexId v) const;
  [[nodiscard]] const std::vector<std::string>& vertex_marks() const noexcept { return marks_; }
  [[nodiscard]] bool loop_flag(SymbolId s, VertexId v) const;
  [[nodiscard]] const std::vector<std::vector<std::uint8_t>>& loop_flags() const noexcept {
    return loop_flags_;
  }

  /// One undirected edge per {s, i(s)}-orbit pair: for s < i(s) the edges
  /// (v, v.s); for s = i(s) the edges (v, v.s) with v <= v.s. Flagged loops are
  /// dropped unless `include_flagged_loops`.
  [[nodiscard]] Multigraph underlying_graph(bool include_flagged_loops = true) const;

  friend bool operator==(const SchreierGraph&, const SchreierGraph&) = default;

 private:
  GeneratorSet generators_;
  std::size_t vertex_count_ = 0;
  std::vector<std::vector<VertexId>> actions_;
  std::vector<std::string> marks_;
  std::vector<std::vector<std::uint8_t>> loop_flags_;
};

/// Product of cycles Z/d_1 x ... x Z/d_k with generators +-e_j (paired letters
/// s,S,t,T,...). Vertex (x_1,...,x_k) has mixed-radix index with x_1 most
/// significant.
SchreierGraph build_torus(std::span<const std::size_t> dims);

/// k independent uniform permutations of n points; generator j paired with a
/// fresh inverse symbol.
SchreierGraph random_schreier(std::size_t k, std::size_t n, Rng& rng);

/// Proper edge labelling by rounds of fresh uniform priorities followed by
/// flagged loops filling every vertex up to one edge per symbol. `symbols`
/// must use the identity involution and have size >= 2 * max degree.
SchreierGraph label_as_schreier(const Multigraph& graph, const GeneratorSet& symbols, Rng& rng);

/// One new vertex per edge, joined to both endpoints. Old vertices get mark
/// coordinate 0, new vertices coordinate 1.
Multigraph subdivide(const Multigraph& graph);
Multigraph subdivide(const SchreierGraph& graph);

/// Canonical code of the induced, labelled ball B(v, r).
std::string ball_code(const SchreierGraph& graph, VertexId root, std::size_t radius);
/// Whether the induced ball B(v, r) is a tree (no loops, no parallel edges, no cycles).
bool ball_is_tree(const SchreierGraph& graph, VertexId root, std::size_t radius);
double tree_like_fraction(const SchreierGraph& graph, std::size_t radius);

/// Law of the ball class of a uniformly chosen root, kept as exact counts.
struct BallDistribution {
  std::size_t radius = 0;
  std::size_t total = 0;
  std::map<std::string, std::size_t> counts;

  [[nodiscard]] double probability(const std::string& code) const;
};

BallDistribution local_statistics(const SchreierGraph& graph, std::size_t radius);

/// Total variation distance. Throws InvalidArgument on radius mismatch.
double ball_distance(const BallDistribution& a, const BallDistribution& b);

std::string to_json(const SchreierGraph& graph);
SchreierGraph schreier_from_json(const std::string& text);

}  // namespace sofic
