#include "sofic/error.hpp"
#include "sofic/schreier.hpp"

#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <set>

using namespace sofic;

namespace {

void check_schreier_condition(const SchreierGraph& g) {
  for (SymbolId s = 0; s < g.generators().size(); ++s) {
    const SymbolId inv = g.generators().inverse(s);
    std::vector<int> incoming(g.vertex_count(), 0);
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
      REQUIRE(g.act(g.act(v, s), inv) == v);
      ++incoming[g.act(v, s)];
    }
    for (int c : incoming) REQUIRE(c == 1);
  }
}

std::vector<VertexId> ball_vertices(const SchreierGraph& g, VertexId root, std::size_t r) {
  std::vector<int> dist(g.vertex_count(), -1);
  std::vector<VertexId> out{root};
  dist[root] = 0;
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (static_cast<std::size_t>(dist[out[i]]) == r) continue;
    for (SymbolId s = 0; s < g.generators().size(); ++s) {
      const VertexId w = g.act(out[i], s);
      if (dist[w] < 0) {
        dist[w] = dist[out[i]] + 1;
        out.push_back(w);
      }
    }
  }
  return out;
}

// Root-, mark-, label- and loop-flag-preserving isomorphism of induced balls,
// by trying every bijection.
bool balls_isomorphic(const SchreierGraph& g, VertexId a, const SchreierGraph& h, VertexId b,
                      std::size_t r) {
  auto ba = ball_vertices(g, a, r);
  auto bb = ball_vertices(h, b, r);
  if (ba.size() != bb.size()) return false;
  std::vector<std::size_t> perm(bb.size());
  std::iota(perm.begin(), perm.end(), 0);
  auto pos = [](const std::vector<VertexId>& vs, VertexId v) -> int {
    const auto it = std::find(vs.begin(), vs.end(), v);
    return it == vs.end() ? -1 : static_cast<int>(it - vs.begin());
  };
  do {
    if (perm[0] != 0) continue;
    bool ok = true;
    for (std::size_t i = 0; i < ba.size() && ok; ++i) {
      const VertexId v = ba[i];
      const VertexId w = bb[perm[i]];
      if (g.mark(v) != h.mark(w)) ok = false;
      for (SymbolId s = 0; s < g.generators().size() && ok; ++s) {
        const int pv = pos(ba, g.act(v, s));
        const int pw = pos(bb, h.act(w, s));
        if ((pv < 0) != (pw < 0)) {
          ok = false;
        } else if (pv >= 0 && (perm[static_cast<std::size_t>(pv)] != static_cast<std::size_t>(pw) ||
                               g.loop_flag(s, v) != h.loop_flag(s, w))) {
          ok = false;
        }
      }
    }
    if (ok) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

}  // namespace

TEST_CASE("generator sets") {
  const auto p = GeneratorSet::paired(2);
  CHECK(p.symbols() == std::vector<std::string>{"s", "S", "t", "T"});
  CHECK(p.inverse(0) == 1);
  CHECK(p.resolve_letter('T') == 3);
  CHECK_THROWS_AS((void)p.resolve_letter('x'), InvalidArgument);
  CHECK_THROWS_AS(GeneratorSet({"a", "b"}, {1, 1}), InvalidArgument);
  CHECK(GeneratorSet::self_inverse(3).is_identity_involution());
}

TEST_CASE("build_torus examples") {
  const std::vector<std::size_t> d4{4};
  const auto c4 = build_torus(d4);
  CHECK(c4.vertex_count() == 4);
  CHECK(c4.generators().size() == 2);
  const auto u4 = c4.underlying_graph();
  for (VertexId v = 0; v < 4; ++v) CHECK(u4.degree(v) == 2);
  check_schreier_condition(c4);

  const std::vector<std::size_t> d33{3, 3};
  const auto t = build_torus(d33);
  CHECK(t.vertex_count() == 9);
  CHECK(t.generators().size() == 4);
  CHECK(t.underlying_graph().edges.size() == 18);
  check_schreier_condition(t);

  const std::vector<std::size_t> d10{10};
  const auto c10 = build_torus(d10);
  CHECK(ball_is_tree(c10, 3, 2));
  CHECK(ball_vertices(c10, 3, 2).size() == 5);
  CHECK_THROWS_AS(build_torus(std::vector<std::size_t>{}), InvalidArgument);
  CHECK_THROWS_AS(build_torus(std::vector<std::size_t>{3, 0}), InvalidArgument);
}

TEST_CASE("random_schreier examples") {
  Rng rng(1);
  const auto one = random_schreier(2, 1, rng);
  CHECK(one.vertex_count() == 1);
  for (SymbolId s = 0; s < 4; ++s) CHECK(one.act(0, s) == 0);
  const auto g = random_schreier(2, 200, rng);
  check_schreier_condition(g);

  // fixed points of a uniform permutation have mean 1
  double fixed = 0;
  const int seeds = 40;
  for (int seed = 0; seed < seeds; ++seed) {
    Rng r(static_cast<std::uint64_t>(seed));
    const auto h = random_schreier(2, 10000, r);
    for (VertexId v = 0; v < h.vertex_count(); ++v) fixed += h.act(v, 0) == v ? 1 : 0;
  }
  CHECK(fixed / seeds == doctest::Approx(1.0).epsilon(0.5));
  CHECK_THROWS_AS(random_schreier(0, 3, rng), InvalidArgument);
}

TEST_CASE("random Schreier graphs are locally tree-like") {
  // a radius-2 ball holds 17 vertices, so about 2% of roots see a collision
  // at n = 10^4 and the defect scales like 1/n
  double small = 0, large = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Rng rng(seed);
    const double f = tree_like_fraction(random_schreier(2, 10000, rng), 2);
    CHECK(f > 0.95);
    large += (1 - f) / 20;
    small += (1 - tree_like_fraction(random_schreier(2, 1000, rng), 2)) / 20;
  }
  CHECK(small > 5 * large);
  CHECK(small < 15 * large);
}

TEST_CASE("label_as_schreier examples") {
  Rng rng(9);
  SUBCASE("single edge") {
    const Multigraph g(2, {{0, 1}});
    const auto s = label_as_schreier(g, GeneratorSet::self_inverse(2), rng);
    check_schreier_condition(s);
    SymbolId edge_symbol = s.act(0, 0) == 1 ? 0 : 1;
    CHECK(s.act(0, edge_symbol) == 1);
    CHECK(s.act(0, 1 - edge_symbol) == 0);
    CHECK(s.loop_flag(1 - edge_symbol, 0));
    CHECK(s.loop_flag(1 - edge_symbol, 1));
    CHECK_FALSE(s.loop_flag(edge_symbol, 0));
  }
  SUBCASE("edgeless graph") {
    const Multigraph g(5);
    const auto s = label_as_schreier(g, GeneratorSet::self_inverse(1), rng);
    for (VertexId v = 0; v < 5; ++v) CHECK(s.loop_flag(0, v));
  }
  SUBCASE("cycle C4 with four symbols") {
    const auto g = cycle_graph(4);
    const auto s = label_as_schreier(g, GeneratorSet::self_inverse(4), rng);
    check_schreier_condition(s);
    for (VertexId v = 0; v < 4; ++v) {
      int flagged = 0;
      for (SymbolId k = 0; k < 4; ++k) flagged += s.loop_flag(k, v) ? 1 : 0;
      CHECK(flagged == 2);
    }
    CHECK(s.underlying_graph(false).edges.size() == 4);
  }
  SUBCASE("too few symbols") {
    CHECK_THROWS_AS(label_as_schreier(cycle_graph(4), GeneratorSet::self_inverse(3), rng),
                    InvalidArgument);
  }
}

TEST_CASE("label_as_schreier keeps the graph and marks on random inputs") {
  Rng rng(17);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 3 + rng.below(8);
    std::vector<Edge> edges;
    const std::size_t m = rng.below(2 * n);
    for (std::size_t i = 0; i < m; ++i) {
      const auto a = static_cast<VertexId>(rng.below(n));
      const auto b = static_cast<VertexId>(rng.below(n));
      if (a != b) edges.push_back({std::min(a, b), std::max(a, b)});
    }
    std::vector<std::string> marks;
    for (std::size_t v = 0; v < n; ++v) marks.push_back(std::string(1, static_cast<char>('a' + rng.below(3))));
    const Multigraph g(n, edges, marks);
    const std::size_t k = std::max<std::size_t>(1, 2 * g.max_degree());
    const auto s = label_as_schreier(g, GeneratorSet::self_inverse(k), rng);
    check_schreier_condition(s);
    CHECK(s.vertex_marks() == marks);
    // proper: at most one non-loop edge per symbol at each vertex is automatic;
    // compare the unflagged edge multiset with the input
    auto key = [](const Edge& e) { return std::make_pair(std::min(e.tail, e.head), std::max(e.tail, e.head)); };
    std::multiset<std::pair<VertexId, VertexId>> want, got;
    for (const auto& e : edges) want.insert(key(e));
    for (const auto& e : s.underlying_graph(false).edges) got.insert(key(e));
    CHECK(want == got);
  }
}

TEST_CASE("subdivide examples") {
  const auto p = subdivide(Multigraph(2, {{0, 1}}));
  CHECK(p.vertex_count == 3);
  CHECK(p.edges.size() == 2);
  CHECK(p.degree(2) == 2);

  const auto hex = subdivide(cycle_graph(3));
  CHECK(hex.vertex_count == 6);
  CHECK(hex.edges.size() == 6);
  CHECK(hex.is_connected());
  for (VertexId v = 0; v < 6; ++v) CHECK(hex.degree(v) == 2);
  for (VertexId v = 0; v < 6; ++v) CHECK(hex.mark(v) == (v < 3 ? with_coordinate("", 0) : with_coordinate("", 1)));
  // alternating marks around the cycle
  for (const auto& e : hex.edges) CHECK(hex.mark(e.tail) != hex.mark(e.head));

  const std::vector<std::size_t> d{3, 4};
  const auto t = build_torus(d);
  const auto st = subdivide(t);
  CHECK(st.edges.size() == 2 * t.underlying_graph().edges.size());
  CHECK(st.is_connected());
}

TEST_CASE("local statistics examples") {
  const auto c10 = build_torus(std::vector<std::size_t>{10});
  const auto c12 = build_torus(std::vector<std::size_t>{12});
  const auto n10 = local_statistics(c10, 2);
  CHECK(n10.counts.size() == 1);
  CHECK(n10.probability(n10.counts.begin()->first) == 1.0);
  CHECK(ball_distance(n10, local_statistics(c12, 2)) == 0.0);
  for (std::size_t n = 6; n <= 9; ++n) {
    const auto cn = build_torus(std::vector<std::size_t>{n});
    CHECK(ball_distance(local_statistics(cn, 2), n10) == 0.0);
  }
}

TEST_CASE("ball_distance edge cases") {
  const auto c10 = build_torus(std::vector<std::size_t>{10});
  const std::vector<std::size_t> d{10, 10};
  const auto t = build_torus(d);
  CHECK(ball_distance(local_statistics(c10, 1), local_statistics(t, 1)) == 1.0);
  CHECK_THROWS_AS(ball_distance(local_statistics(c10, 1), local_statistics(c10, 2)), InvalidArgument);
}

TEST_CASE("radius zero groups vertices by mark and root loops") {
  Rng rng(4);
  const Multigraph g(4, {}, {"x", "y", "x", "x"});
  const auto s = label_as_schreier(g, GeneratorSet::self_inverse(4), rng);
  const auto d = local_statistics(s, 0);
  CHECK(d.counts.size() == 2);
  double total = 0;
  for (const auto& [code, count] : d.counts) total += d.probability(code);
  CHECK(total == 1.0);
}

TEST_CASE("torus balls are point masses below half the side") {
  for (std::size_t n = 5; n <= 8; ++n) {
    const std::vector<std::size_t> d{n, n};
    const auto t = build_torus(d);
    for (std::size_t r = 0; 2 * r < n; ++r) CHECK(local_statistics(t, r).counts.size() == 1);
  }
}

TEST_CASE("ball codes agree with exhaustive isomorphism testing") {
  Rng rng(23);
  for (int trial = 0; trial < 12; ++trial) {
    const auto g = random_schreier(1, 5 + rng.below(4), rng);
    const auto h = random_schreier(1, 5 + rng.below(4), rng);
    for (std::size_t r = 1; r <= 3; ++r) {
      for (VertexId a = 0; a < g.vertex_count(); ++a) {
        for (VertexId b = 0; b < h.vertex_count(); ++b) {
          const bool same = ball_code(g, a, r) == ball_code(h, b, r);
          REQUIRE(same == balls_isomorphic(g, a, h, b, r));
        }
      }
    }
  }
  // self-inverse symbols with flagged loops
  const auto lg = label_as_schreier(path_graph(5), GeneratorSet::self_inverse(4), rng);
  for (std::size_t r = 1; r <= 2; ++r) {
    for (VertexId a = 0; a < 5; ++a) {
      for (VertexId b = 0; b < 5; ++b) {
        REQUIRE((ball_code(lg, a, r) == ball_code(lg, b, r)) == balls_isomorphic(lg, a, lg, b, r));
      }
    }
  }
}

TEST_CASE("ball codes are invariant under vertex relabelling") {
  Rng rng(31);
  const auto g = random_schreier(2, 30, rng);
  std::vector<VertexId> perm(30);
  std::iota(perm.begin(), perm.end(), VertexId{0});
  shuffle(perm, rng);
  std::vector<std::vector<VertexId>> actions(g.actions().size(), std::vector<VertexId>(30));
  for (std::size_t s = 0; s < actions.size(); ++s) {
    for (VertexId v = 0; v < 30; ++v) actions[s][perm[v]] = perm[g.act(v, static_cast<SymbolId>(s))];
  }
  const SchreierGraph h(g.generators(), actions);
  for (std::size_t r = 0; r <= 3; ++r) {
    const auto a = local_statistics(g, r);
    const auto b = local_statistics(h, r);
    CHECK(a.counts == b.counts);
  }
}

TEST_CASE("Schreier JSON round trip and validation") {
  Rng rng(2);
  const auto g = label_as_schreier(cycle_graph(5), GeneratorSet::self_inverse(4), rng);
  const auto text = to_json(g);
  CHECK(schreier_from_json(text) == g);
  CHECK(to_json(schreier_from_json(text)) == text);
  CHECK_THROWS_AS(schreier_from_json(R"({"symbols":["a"],"involution":[0],"actions":[[0]],"extra":1})"),
                  InvalidArgument);
  CHECK_THROWS_AS(schreier_from_json(R"({"symbols":["a"],"involution":[0],"actions":[[1,1]]})"),
                  InvalidArgument);
}
