#include "sofic/schreier.hpp"

#include "sofic/error.hpp"

#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <deque>
#include <numeric>

namespace sofic {

namespace {
const std::string kEmptyMark;

char toggle_case(char c) {
  const auto u = static_cast<unsigned char>(c);
  return std::islower(u) ? static_cast<char>(std::toupper(u)) : static_cast<char>(std::tolower(u));
}
}  // namespace

// ---------------------------------------------------------------- GeneratorSet

GeneratorSet::GeneratorSet(std::vector<std::string> symbols, std::vector<SymbolId> involution)
    : symbols_(std::move(symbols)), involution_(std::move(involution)) {
  if (symbols_.size() != involution_.size()) {
    throw InvalidArgument("GeneratorSet: involution size differs from symbol count");
  }
  for (SymbolId s = 0; s < symbols_.size(); ++s) {
    if (involution_[s] >= symbols_.size() || involution_[involution_[s]] != s) {
      throw InvalidArgument("GeneratorSet: involution is not self-inverse");
    }
  }
  auto sorted = symbols_;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw InvalidArgument("GeneratorSet: duplicate symbol");
  }
}

GeneratorSet GeneratorSet::paired(std::size_t k) {
  if (k == 0 || k > 8) throw InvalidArgument("GeneratorSet::paired: need 1 <= k <= 8");
  std::vector<std::string> symbols;
  std::vector<SymbolId> inv;
  for (std::size_t j = 0; j < k; ++j) {
    const char c = standard_letter(j);
    symbols.emplace_back(1, c);
    symbols.emplace_back(1, toggle_case(c));
    inv.push_back(2 * j + 1);
    inv.push_back(2 * j);
  }
  return {std::move(symbols), std::move(inv)};
}

GeneratorSet GeneratorSet::self_inverse(std::size_t k) {
  if (k == 0 || k > 26) throw InvalidArgument("GeneratorSet::self_inverse: need 1 <= k <= 26");
  std::vector<std::string> symbols;
  std::vector<SymbolId> inv(k);
  std::iota(inv.begin(), inv.end(), SymbolId{0});
  for (std::size_t j = 0; j < k; ++j) symbols.emplace_back(1, static_cast<char>('a' + j));
  return {std::move(symbols), std::move(inv)};
}

std::optional<SymbolId> GeneratorSet::find(const std::string& name) const {
  const auto it = std::find(symbols_.begin(), symbols_.end(), name);
  if (it == symbols_.end()) return std::nullopt;
  return static_cast<SymbolId>(it - symbols_.begin());
}

bool GeneratorSet::is_identity_involution() const {
  for (SymbolId s = 0; s < involution_.size(); ++s) {
    if (involution_[s] != s) return false;
  }
  return true;
}

SymbolId GeneratorSet::resolve_letter(char letter) const {
  if (auto s = find(std::string(1, letter))) return *s;
  if (auto s = find(std::string(1, toggle_case(letter)))) return involution_[*s];
  throw InvalidArgument(std::string("unknown generator letter '") + letter + "'");
}

std::vector<SymbolId> GeneratorSet::resolve_word(const std::string& word) const {
  std::vector<SymbolId> out;
  out.reserve(word.size());
  for (char c : word) out.push_back(resolve_letter(c));
  return out;
}

char standard_letter(std::size_t j) {
  if (j >= 8) throw InvalidArgument("standard_letter: at most 8 generators");
  return static_cast<char>('s' + j);
}

// --------------------------------------------------------------- SchreierGraph

SchreierGraph::SchreierGraph(GeneratorSet generators, std::vector<std::vector<VertexId>> actions,
                             std::vector<std::string> vertex_marks,
                             std::vector<std::vector<std::uint8_t>> loop_flags)
    : generators_(std::move(generators)),
      actions_(std::move(actions)),
      marks_(std::move(vertex_marks)),
      loop_flags_(std::move(loop_flags)) {
  if (actions_.size() != generators_.size()) {
    throw InvalidArgument("SchreierGraph: one action per symbol required");
  }
  if (actions_.empty()) throw InvalidArgument("SchreierGraph: empty generator set");
  vertex_count_ = actions_.front().size();
  if (vertex_count_ == 0) throw InvalidArgument("SchreierGraph: no vertices");
  for (const auto& perm : actions_) {
    if (perm.size() != vertex_count_) {
      throw InvalidArgument("SchreierGraph: actions have different sizes");
    }
    std::vector<char> hit(vertex_count_, 0);
    for (VertexId w : perm) {
      if (w >= vertex_count_ || hit[w]) {
        throw InvalidArgument("SchreierGraph: action is not a permutation");
      }
      hit[w] = 1;
    }
  }
  for (SymbolId s = 0; s < actions_.size(); ++s) {
    const auto& back = actions_[generators_.inverse(s)];
    for (VertexId v = 0; v < vertex_count_; ++v) {
      if (back[actions_[s][v]] != v) {
        throw InvalidArgument("SchreierGraph: inverse symbol does not invert the action");
      }
    }
  }
  if (!marks_.empty() && marks_.size() != vertex_count_) {
    throw InvalidArgument("SchreierGraph: marks must be empty or one per vertex");
  }
  if (loop_flags_.empty()) {
    loop_flags_.assign(actions_.size(), std::vector<std::uint8_t>(vertex_count_, 0));
  }
  if (loop_flags_.size() != actions_.size()) {
    throw InvalidArgument("SchreierGraph: loop flags need one row per symbol");
  }
  for (SymbolId s = 0; s < actions_.size(); ++s) {
    if (loop_flags_[s].size() != vertex_count_) {
      throw InvalidArgument("SchreierGraph: loop flag row has wrong size");
    }
    for (VertexId v = 0; v < vertex_count_; ++v) {
      if (loop_flags_[s][v] > 1) throw InvalidArgument("SchreierGraph: loop flag must be 0 or 1");
      if (loop_flags_[s][v] && actions_[s][v] != v) {
        throw InvalidArgument("SchreierGraph: loop flag set on a non-loop edge");
      }
    }
  }
}

VertexId SchreierGraph::act(VertexId v, std::span<const SymbolId> word) const {
  for (SymbolId s : word) v = actions_[s][v];
  return v;
}

const std::string& SchreierGraph::mark(VertexId v) const {
  return marks_.empty() ? kEmptyMark : marks_.at(v);
}

bool SchreierGraph::loop_flag(SymbolId s, VertexId v) const { return loop_flags_[s][v] != 0; }

Multigraph SchreierGraph::underlying_graph(bool include_flagged_loops) const {
  std::vector<Edge> edges;
  for (SymbolId s = 0; s < actions_.size(); ++s) {
    const SymbolId inv = generators_.inverse(s);
    if (inv < s) continue;
    for (VertexId v = 0; v < vertex_count_; ++v) {
      const VertexId w = actions_[s][v];
      if (inv == s && w < v) continue;
      if (w == v && loop_flags_[s][v] && !include_flagged_loops) continue;
      edges.push_back({v, w});
    }
  }
  return Multigraph(vertex_count_, std::move(edges), marks_);
}

// ---------------------------------------------------------------- constructors

SchreierGraph build_torus(std::span<const std::size_t> dims) {
  if (dims.empty()) throw InvalidArgument("build_torus: empty dimension list");
  std::size_t n = 1;
  for (auto d : dims) {
    if (d == 0) throw InvalidArgument("build_torus: dimensions must be positive");
    n *= d;
  }
  auto generators = GeneratorSet::paired(dims.size());
  std::vector<std::vector<VertexId>> actions(2 * dims.size(), std::vector<VertexId>(n));
  // stride of coordinate j in the mixed-radix index
  std::vector<std::size_t> stride(dims.size(), 1);
  for (std::size_t j = dims.size() - 1; j-- > 0;) stride[j] = stride[j + 1] * dims[j + 1];
  for (std::size_t v = 0; v < n; ++v) {
    for (std::size_t j = 0; j < dims.size(); ++j) {
      const std::size_t x = (v / stride[j]) % dims[j];
      const std::size_t base = v - x * stride[j];
      actions[2 * j][v] = static_cast<VertexId>(base + ((x + 1) % dims[j]) * stride[j]);
      actions[2 * j + 1][v] = static_cast<VertexId>(base + ((x + dims[j] - 1) % dims[j]) * stride[j]);
    }
  }
  return SchreierGraph(std::move(generators), std::move(actions));
}

SchreierGraph random_schreier(std::size_t k, std::size_t n, Rng& rng) {
  if (k == 0 || n == 0) throw InvalidArgument("random_schreier: need k >= 1 and n >= 1");
  auto generators = GeneratorSet::paired(k);
  std::vector<std::vector<VertexId>> actions;
  for (std::size_t j = 0; j < k; ++j) {
    std::vector<VertexId> perm(n);
    std::iota(perm.begin(), perm.end(), VertexId{0});
    shuffle(perm, rng);
    std::vector<VertexId> inv(n);
    for (VertexId v = 0; v < n; ++v) inv[perm[v]] = v;
    actions.push_back(std::move(perm));
    actions.push_back(std::move(inv));
  }
  return SchreierGraph(std::move(generators), std::move(actions));
}

SchreierGraph label_as_schreier(const Multigraph& graph, const GeneratorSet& symbols, Rng& rng) {
  if (!symbols.is_identity_involution()) {
    throw InvalidArgument("label_as_schreier: symbols must use the identity involution");
  }
  if (symbols.size() < 2 * graph.max_degree()) {
    throw InvalidArgument("label_as_schreier: need |S| >= 2 * max degree");
  }
  if (graph.vertex_count == 0) throw InvalidArgument("label_as_schreier: empty graph");

  const std::size_t m = graph.edges.size();
  // N(e): edges sharing an endpoint with e, including e
  std::vector<std::vector<std::size_t>> at_vertex(graph.vertex_count);
  for (std::size_t e = 0; e < m; ++e) {
    at_vertex[graph.edges[e].tail].push_back(e);
    if (!graph.edges[e].is_loop()) at_vertex[graph.edges[e].head].push_back(e);
  }
  std::vector<std::vector<std::size_t>> neighbourhood(m);
  for (std::size_t e = 0; e < m; ++e) {
    auto& nb = neighbourhood[e];
    nb = at_vertex[graph.edges[e].tail];
    const auto& other = at_vertex[graph.edges[e].head];
    nb.insert(nb.end(), other.begin(), other.end());
    std::sort(nb.begin(), nb.end());
    nb.erase(std::unique(nb.begin(), nb.end()), nb.end());
  }

  constexpr std::size_t kUnlabelled = static_cast<std::size_t>(-1);
  std::vector<std::size_t> label(m, kUnlabelled);
  std::size_t remaining = m;
  std::vector<double> priority(m);
  std::vector<std::pair<std::size_t, std::size_t>> assigned;
  while (remaining > 0) {
    for (auto& u : priority) u = rng.uniform();
    assigned.clear();
    for (std::size_t e = 0; e < m; ++e) {
      if (label[e] != kUnlabelled) continue;
      bool is_min = true;
      for (std::size_t f : neighbourhood[e]) {
        if (priority[f] < priority[e] || (priority[f] == priority[e] && f < e)) {
          is_min = false;
          break;
        }
      }
      if (!is_min) continue;
      std::vector<char> used(symbols.size(), 0);
      for (std::size_t f : neighbourhood[e]) {
        if (label[f] != kUnlabelled) used[label[f]] = 1;
      }
      std::size_t j = 0;
      while (used[j]) ++j;  // exists because |S| >= 2 * max degree
      assigned.emplace_back(e, j);
    }
    for (auto [e, j] : assigned) label[e] = j;
    remaining -= assigned.size();
  }

  const std::size_t n = graph.vertex_count;
  std::vector<std::vector<VertexId>> actions(symbols.size(), std::vector<VertexId>(n));
  std::vector<std::vector<std::uint8_t>> flags(symbols.size(), std::vector<std::uint8_t>(n, 1));
  for (auto& row : actions) std::iota(row.begin(), row.end(), VertexId{0});
  for (std::size_t e = 0; e < m; ++e) {
    const auto [u, v] = graph.edges[e];
    actions[label[e]][u] = v;
    actions[label[e]][v] = u;
    flags[label[e]][u] = 0;
    flags[label[e]][v] = 0;
  }
  std::vector<std::string> marks = graph.marks;
  return SchreierGraph(symbols, std::move(actions), std::move(marks), std::move(flags));
}

Multigraph subdivide(const Multigraph& graph) {
  const std::size_t n = graph.vertex_count;
  std::vector<std::string> marks;
  marks.reserve(n + graph.edges.size());
  for (VertexId v = 0; v < n; ++v) marks.push_back(with_coordinate(graph.mark(v), 0));
  std::vector<Edge> edges;
  edges.reserve(2 * graph.edges.size());
  for (std::size_t e = 0; e < graph.edges.size(); ++e) {
    const auto x = static_cast<VertexId>(n + e);
    marks.push_back(with_coordinate("", 1));
    edges.push_back({graph.edges[e].tail, x});
    edges.push_back({x, graph.edges[e].head});
  }
  return Multigraph(n + graph.edges.size(), std::move(edges), std::move(marks));
}

Multigraph subdivide(const SchreierGraph& graph) { return subdivide(graph.underlying_graph()); }

// ------------------------------------------------------------ local statistics

namespace {

void collect_ball(const SchreierGraph& g, VertexId root, std::size_t radius,
                  std::vector<VertexId>& order, std::vector<std::int64_t>& index) {
  order.clear();
  order.push_back(root);
  index[root] = 0;
  std::size_t level_begin = 0;
  for (std::size_t depth = 0; depth < radius; ++depth) {
    const std::size_t level_end = order.size();
    for (std::size_t i = level_begin; i < level_end; ++i) {
      for (SymbolId s = 0; s < g.generators().size(); ++s) {
        const VertexId w = g.act(order[i], s);
        if (index[w] < 0) {
          index[w] = static_cast<std::int64_t>(order.size());
          order.push_back(w);
        }
      }
    }
    level_begin = level_end;
    if (level_begin == order.size()) break;
  }
}

}  // namespace

std::string ball_code(const SchreierGraph& g, VertexId root, std::size_t radius) {
  std::vector<std::int64_t> index(g.vertex_count(), -1);
  std::vector<VertexId> order;
  collect_ball(g, root, radius, order, index);
  std::string code = std::to_string(radius) + "#";
  for (VertexId v : order) {
    code += g.mark(v);
    code += '[';
    for (SymbolId s = 0; s < g.generators().size(); ++s) {
      const auto target = index[g.act(v, s)];
      if (target < 0) {
        code += '-';
      } else {
        code += std::to_string(target);
        if (g.loop_flag(s, v)) code += '*';
      }
      code += ',';
    }
    code += ']';
  }
  return code;
}

bool ball_is_tree(const SchreierGraph& g, VertexId root, std::size_t radius) {
  std::vector<std::int64_t> index(g.vertex_count(), -1);
  std::vector<VertexId> order;
  collect_ball(g, root, radius, order, index);
  std::size_t edges = 0;
  std::vector<std::pair<VertexId, VertexId>> pairs;
  for (VertexId v : order) {
    for (SymbolId s = 0; s < g.generators().size(); ++s) {
      const SymbolId inv = g.generators().inverse(s);
      if (inv < s) continue;
      const VertexId w = g.act(v, s);
      if (index[w] < 0) continue;
      if (w == v) return false;
      if (inv == s && w < v) continue;
      pairs.emplace_back(std::min(v, w), std::max(v, w));
      ++edges;
    }
  }
  std::sort(pairs.begin(), pairs.end());
  if (std::adjacent_find(pairs.begin(), pairs.end()) != pairs.end()) return false;
  return edges + 1 == order.size();
}

double tree_like_fraction(const SchreierGraph& g, std::size_t radius) {
  std::size_t count = 0;
  for (VertexId v = 0; v < g.vertex_count(); ++v) count += ball_is_tree(g, v, radius) ? 1 : 0;
  return static_cast<double>(count) / static_cast<double>(g.vertex_count());
}

double BallDistribution::probability(const std::string& code) const {
  const auto it = counts.find(code);
  if (it == counts.end() || total == 0) return 0.0;
  return static_cast<double>(it->second) / static_cast<double>(total);
}

BallDistribution local_statistics(const SchreierGraph& g, std::size_t radius) {
  BallDistribution dist;
  dist.radius = radius;
  dist.total = g.vertex_count();
  for (VertexId v = 0; v < g.vertex_count(); ++v) ++dist.counts[ball_code(g, v, radius)];
  return dist;
}

double ball_distance(const BallDistribution& a, const BallDistribution& b) {
  if (a.radius != b.radius) throw InvalidArgument("ball_distance: radius mismatch");
  double sum = 0.0;
  for (const auto& [code, count] : a.counts) sum += std::abs(a.probability(code) - b.probability(code));
  for (const auto& [code, count] : b.counts) {
    if (!a.counts.contains(code)) sum += b.probability(code);
  }
  return 0.5 * sum;
}

// --------------------------------------------------------------- serialization

std::string to_json(const SchreierGraph& g) {
  nlohmann::json j;
  j["symbols"] = g.generators().symbols();
  j["involution"] = g.generators().involution();
  j["actions"] = g.actions();
  j["vertex_marks"] = g.vertex_marks();
  auto flags = nlohmann::json::array();
  for (const auto& row : g.loop_flags()) {
    auto r = nlohmann::json::array();
    for (auto f : row) r.push_back(static_cast<int>(f));
    flags.push_back(std::move(r));
  }
  j["loop_flags"] = std::move(flags);
  return j.dump();
}

SchreierGraph schreier_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& ex) {
    throw InvalidArgument(std::string("Schreier JSON: ") + ex.what());
  }
  static const std::vector<std::string> kKeys = {"symbols", "involution", "actions",
                                                 "vertex_marks", "loop_flags"};
  for (const auto& [key, value] : j.items()) {
    if (std::find(kKeys.begin(), kKeys.end(), key) == kKeys.end()) {
      throw InvalidArgument("Schreier JSON: unknown key '" + key + "'");
    }
  }
  try {
    GeneratorSet gens(j.at("symbols").get<std::vector<std::string>>(),
                      j.at("involution").get<std::vector<SymbolId>>());
    auto actions = j.at("actions").get<std::vector<std::vector<VertexId>>>();
    std::vector<std::string> marks;
    if (j.contains("vertex_marks")) marks = j["vertex_marks"].get<std::vector<std::string>>();
    std::vector<std::vector<std::uint8_t>> flags;
    if (j.contains("loop_flags")) {
      for (const auto& row : j["loop_flags"]) {
        std::vector<std::uint8_t> r;
        for (const auto& f : row) r.push_back(static_cast<std::uint8_t>(f.get<int>()));
        flags.push_back(std::move(r));
      }
    }
    return SchreierGraph(std::move(gens), std::move(actions), std::move(marks), std::move(flags));
  } catch (const nlohmann::json::exception& ex) {
    throw InvalidArgument(std::string("Schreier JSON: ") + ex.what());
  }
}

}  // namespace sofic
