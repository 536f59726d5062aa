#include "sofic/coupling.hpp"
#include "sofic/dpp.hpp"
#include "sofic/error.hpp"
#include "sofic/random_matrix.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <cmath>

using namespace sofic;

namespace {

SubsetDistribution law(std::size_t n, std::vector<std::pair<Mask, double>> atoms) {
  return SubsetDistribution(SubsetDistribution::default_labels(n), std::move(atoms));
}

SubsetDistribution point(std::size_t n, Mask m) {
  return SubsetDistribution::point_mass(SubsetDistribution::default_labels(n), m);
}

double expected_hamming(const Coupling& c) {
  double sum = 0;
  for (const auto& a : c.atoms()) sum += a.probability * popcount(a.first ^ a.second);
  return sum / static_cast<double>(c.ground_size());
}

SubsetDistribution dpp_law(const Matrix& q) { return exact_distribution(DeterminantalMeasure(q)); }

}  // namespace

TEST_CASE("coupling construction") {
  const Coupling c({"a", "b"}, {{0b01, 0b11, 0.25}, {0b01, 0b11, 0.25}, {0, 0b10, 0.5}, {0b11, 0, 0.0}});
  CHECK(c.atoms().size() == 2);
  CHECK(c.atoms()[0] == CouplingAtom{0, 0b10, 0.5});
  CHECK(c.is_monotone());
  CHECK(c.first_marginal().probability(0b01) == doctest::Approx(0.5));
  CHECK(c.second_marginal().probability(0b11) == doctest::Approx(0.5));
  CHECK(c.disagreement() == doctest::Approx((0.5 * 1 + 0.5 * 1) / 2));
  CHECK_THROWS_AS(Coupling({"a"}, {{0, 1, 0.5}}), InvalidArgument);
  CHECK_THROWS_AS(Coupling({"a"}, {{0, 0b10, 1.0}}), InvalidArgument);
  CHECK_FALSE(Coupling({"a"}, {{1, 0, 1.0}}).is_monotone());
}

TEST_CASE("coupling JSON round trip") {
  const Coupling c({"x", "y", "z"}, {{0b001, 0b011, 0.125}, {0b100, 0b110, 0.375}, {0, 0, 0.5}});
  const auto back = Coupling::from_json(c.to_json());
  CHECK(back.labels() == c.labels());
  CHECK(back.atoms() == c.atoms());
  CHECK(back.to_json() == c.to_json());
  CHECK_THROWS_AS(Coupling::from_json(R"({"labels":["a"],"atoms":[[0,1,1.0]],"extra":1})"), InvalidArgument);
  CHECK_THROWS_AS(Coupling::from_json(R"({"labels":["a"],"monotone":true,"atoms":[[1,0,1.0]]})"), InvalidArgument);
  CHECK_THROWS_AS(Coupling::from_json("not json"), InvalidArgument);
}

TEST_CASE("monotone coupling examples") {
  Rng rng(3);
  const auto upper = oracle::random_law(4, 7, rng);
  const auto from_empty = monotone_coupling(point(4, 0), upper);
  REQUIRE(from_empty.dominated());
  CHECK(from_empty.coupling->atoms().size() == upper.support_size());
  for (const auto& a : from_empty.coupling->atoms()) {
    CHECK(a.first == 0);
    CHECK(a.probability == doctest::Approx(upper.probability(a.second)));
  }

  const auto r = monotone_coupling(oracle::product_law({0.2, 0.3, 0.5}), oracle::product_law({0.4, 0.3, 0.9}));
  REQUIRE(r.dominated());
  CHECK(r.coupling->is_monotone());
  CHECK(r.coupling->first_marginal().max_difference(oracle::product_law({0.2, 0.3, 0.5})) < 1e-9);
  CHECK(r.coupling->second_marginal().max_difference(oracle::product_law({0.4, 0.3, 0.9})) < 1e-9);

  for (std::size_t n = 1; n <= 6; ++n) {
    const auto none = monotone_coupling(point(n, full_mask(n)), point(n, 0));
    CHECK_FALSE(none.dominated());
    REQUIRE(none.witness.has_value());
    CHECK(none.witness->generators == std::vector<Mask>{full_mask(n)});
    CHECK(none.witness->first_mass == doctest::Approx(1.0));
    CHECK(none.witness->second_mass == doctest::Approx(0.0));
  }
  CHECK_THROWS_AS(monotone_coupling(point(2, 0), point(3, 0)), InvalidArgument);
}

TEST_CASE("witnesses are increasing events charged more by the lower law") {
  Rng rng(17);
  std::size_t witnesses = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 1 + rng.below(5);
    const auto a = oracle::random_law(n, 1 + rng.below(6), rng);
    const auto b = oracle::random_law(n, 1 + rng.below(6), rng);
    const auto r = monotone_coupling(a, b);
    if (r.dominated()) continue;
    ++witnesses;
    const auto& w = *r.witness;
    CHECK(w.first_mass > w.second_mass + 1e-9);
    CHECK(w.first_mass == doctest::Approx(up_closure_mass(a, w.generators)).epsilon(1e-12));
    CHECK(w.second_mass == doctest::Approx(up_closure_mass(b, w.generators)).epsilon(1e-12));
    CHECK(std::is_sorted(w.generators.begin(), w.generators.end()));
    for (Mask g : w.generators) {
      for (Mask h : w.generators) CHECK((g == h || !is_subset(g, h)));
    }
  }
  CHECK(witnesses > 50);
}

TEST_CASE("flow feasibility agrees with exhaustive increasing-event checks") {
  Rng rng(29);
  std::size_t feasible = 0;
  std::size_t infeasible = 0;
  for (int trial = 0; trial < 400; ++trial) {
    const std::size_t n = 1 + rng.below(4);
    auto a = oracle::random_law(n, 1 + rng.below(8), rng);
    auto b = oracle::random_law(n, 1 + rng.below(8), rng);
    if (trial % 2 == 0) {
      // bias towards domination: push every atom of b upwards
      std::vector<std::pair<Mask, double>> up;
      for (const auto& [m, p] : a.atoms()) up.emplace_back(m | rng.below(Mask{1} << n), p);
      b = law(n, std::move(up));
    }
    const bool flow = monotone_coupling(a, b).dominated();
    CHECK(flow == oracle::dominated_on_all_increasing_events(a, b));
    (flow ? feasible : infeasible) += 1;
  }
  CHECK(feasible > 100);
  CHECK(infeasible > 50);
}

TEST_CASE("ordered contractions give dominated determinantal laws") {
  Rng rng(31);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + trial % 8;
    const auto [q1, q2] = random_dominated_pair(n, rng);
    const auto a = dpp_law(q1);
    const auto b = dpp_law(q2);
    const auto r = monotone_coupling(a, b);
    REQUIRE(r.dominated());
    CHECK(r.coupling->is_monotone());
    CHECK(r.coupling->first_marginal().max_difference(a) < 1e-9);
    CHECK(r.coupling->second_marginal().max_difference(b) < 1e-9);
    if (n <= 4) CHECK(oracle::dominated_on_all_increasing_events(a, b));
    CHECK(dbar_monotone(a, b) == doctest::Approx((q2 - q1).trace() / static_cast<double>(n)).epsilon(1e-9));
  }
}

TEST_CASE("dbar examples") {
  Rng rng(5);
  const auto a = oracle::random_law(5, 9, rng);
  CHECK(dbar(a, a).value == doctest::Approx(0.0).epsilon(1e-15));
  for (double p : {0.0, 0.1, 0.5, 0.93}) {
    for (double q : {0.0, 0.3, 0.7, 1.0}) {
      CHECK(dbar(oracle::product_law({p}), oracle::product_law({q})).value ==
            doctest::Approx(std::abs(p - q)).epsilon(1e-12));
    }
  }
  for (std::size_t n = 1; n <= 10; ++n) {
    CHECK(dbar(point(n, full_mask(n)), point(n, 0)).value == doctest::Approx(1.0));
  }
  CHECK(dbar(point(40, 0), point(40, full_mask(40))).value == doctest::Approx(1.0));
  std::vector<double> low(13, 0.2), high(13, 0.7);
  CHECK_THROWS_AS(dbar(oracle::product_law(low), oracle::product_law(high)), CapacityExceeded);
  CHECK_THROWS_AS(dbar(point(3, 0), point(4, 1)), InvalidArgument);
}

TEST_CASE("dbar matches linear-programming reference values") {
  // values from tests/oracles/dbar_lp.py
  const auto a3 = law(3, {{0b000, .2}, {0b011, .3}, {0b101, .1}, {0b111, .4}});
  const auto b3 = law(3, {{0b001, .25}, {0b010, .25}, {0b110, .3}, {0b100, .2}});
  CHECK(dbar(a3, b3).value == doctest::Approx(0.366666666666667).epsilon(1e-9));
  const auto c3 = law(3, {{0, .5}, {0b111, .5}});
  const auto d3 = law(3, {{0b001, .2}, {0b010, .2}, {0b100, .2}, {0b011, .4}});
  CHECK(dbar(c3, d3).value == doctest::Approx(0.366666666666667).epsilon(1e-9));
  const auto a4 = law(4, {{0, .1}, {0b0011, .2}, {0b1100, .3}, {0b1111, .4}});
  const auto b4 = law(4, {{0b0101, .35}, {0b1010, .35}, {0b0110, .1}, {0b1001, .2}});
  CHECK(dbar(a4, b4).value == doctest::Approx(0.5).epsilon(1e-9));
}

TEST_CASE("optimal couplings certify the value") {
  Rng rng(8);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 1 + rng.below(7);
    const auto a = oracle::random_law(n, 1 + rng.below(12), rng);
    const auto b = oracle::random_law(n, 1 + rng.below(12), rng);
    const auto r = dbar(a, b);
    CHECK(r.optimal.first_marginal().max_difference(a) < 1e-9);
    CHECK(r.optimal.second_marginal().max_difference(b) < 1e-9);
    CHECK(expected_hamming(r.optimal) == doctest::Approx(r.value).epsilon(1e-9));
    CHECK(r.value <= expected_hamming(independent_coupling(a, b)) + 1e-12);
  }
}

TEST_CASE("dbar is a metric") {
  Rng rng(13);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 1 + rng.below(6);
    const auto x = oracle::random_law(n, 1 + rng.below(8), rng);
    const auto y = oracle::random_law(n, 1 + rng.below(8), rng);
    const auto z = oracle::random_law(n, 1 + rng.below(8), rng);
    const auto xy = dbar(x, y);
    const auto yz = dbar(y, z);
    const double xz = dbar(x, z).value;
    CHECK(xy.value == doctest::Approx(dbar(y, x).value).epsilon(1e-12));
    CHECK(xy.value >= 0);
    CHECK(xz <= xy.value + yz.value + 1e-9);
    // the glued coupling is a certificate for the triangle inequality
    const auto glued = relative_product(xy.optimal, yz.optimal);
    CHECK(glued.first_marginal().max_difference(x) < 1e-9);
    CHECK(glued.second_marginal().max_difference(z) < 1e-9);
    CHECK(xz <= expected_hamming(glued) + 1e-9);
    CHECK(expected_hamming(glued) <= xy.value + yz.value + 1e-9);
  }
}

TEST_CASE("dbar of a dominated pair is the mean marginal gap") {
  Rng rng(23);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 1 + trial % 6;
    std::vector<double> p(n), q(n);
    for (std::size_t i = 0; i < n; ++i) {
      p[i] = rng.uniform();
      q[i] = p[i] + (1 - p[i]) * rng.uniform();
    }
    const auto a = oracle::product_law(p);
    const auto b = oracle::product_law(q);
    double mean = 0;
    for (std::size_t i = 0; i < n; ++i) mean += (q[i] - p[i]) / static_cast<double>(n);
    CHECK(dbar_monotone(a, b) == doctest::Approx(mean).epsilon(1e-12));
    CHECK(dbar(a, b).value == doctest::Approx(mean).epsilon(1e-9));
    CHECK(dbar_monotone(a, a) == doctest::Approx(0.0));
  }
  for (int trial = 0; trial < 40; ++trial) {
    const auto [q1, q2] = random_dominated_pair(1 + trial % 7, rng);
    const auto a = dpp_law(q1);
    const auto b = dpp_law(q2);
    CHECK(std::abs(dbar_monotone(a, b) - dbar(a, b).value) <= 1e-9);
  }
  CHECK_THROWS_AS(dbar_monotone(point(2, 0b11), point(2, 0)), InvalidState);
}

TEST_CASE("sandwiched laws are closer than the outer pair") {
  Rng rng(37);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 2 + trial % 5;
    const auto [q1, q2] = random_dominated_pair(n, rng);
    const double s = rng.uniform();
    const double t = rng.uniform();
    const Matrix q3 = q1 + s * (q2 - q1);
    const Matrix q4 = q1 + t * (q2 - q1);
    const auto m1 = dpp_law(q1);
    const auto m2 = dpp_law(q2);
    const auto m3 = dpp_law(q3);
    const auto m4 = dpp_law(q4);
    REQUIRE(monotone_coupling(m1, m3).dominated());
    REQUIRE(monotone_coupling(m3, m2).dominated());
    REQUIRE(monotone_coupling(m1, m4).dominated());
    REQUIRE(monotone_coupling(m4, m2).dominated());
    CHECK(dbar(m3, m4).value <= dbar(m1, m2).value + 1e-9);
  }
}

TEST_CASE("relative product examples") {
  Rng rng(41);
  const auto a = oracle::random_law(4, 6, rng);
  const auto diag = diagonal_coupling(a);
  const auto glued = relative_product(diag, diag);
  REQUIRE(glued.atoms().size() == diag.atoms().size());
  for (std::size_t i = 0; i < diag.atoms().size(); ++i) {
    CHECK(glued.atoms()[i].first == diag.atoms()[i].first);
    CHECK(glued.atoms()[i].second == diag.atoms()[i].second);
    CHECK(glued.atoms()[i].probability == doctest::Approx(diag.atoms()[i].probability).epsilon(1e-12));
  }

  const auto b = oracle::random_law(4, 5, rng);
  const auto c = oracle::random_law(4, 7, rng);
  const auto product = relative_product(independent_coupling(a, b), independent_coupling(b, c));
  const auto direct = independent_coupling(a, c);
  REQUIRE(product.atoms().size() == direct.atoms().size());
  for (std::size_t i = 0; i < direct.atoms().size(); ++i) {
    CHECK(product.atoms()[i].first == direct.atoms()[i].first);
    CHECK(product.atoms()[i].second == direct.atoms()[i].second);
    CHECK(product.atoms()[i].probability == doctest::Approx(direct.atoms()[i].probability).epsilon(1e-12));
  }
  CHECK_THROWS_AS(relative_product(independent_coupling(a, b), independent_coupling(c, a)), InvalidArgument);
}

TEST_CASE("relative products compose monotone couplings") {
  Rng rng(43);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 2 + trial % 4;
    const auto [mid, q3] = random_dominated_pair(n, rng);
    const Matrix low = 0.5 * mid;
    const auto l1 = dpp_law(low);
    const auto l2 = dpp_law(mid);
    const auto l3 = dpp_law(q3);
    const auto c12 = monotone_coupling(l1, l2);
    const auto c23 = monotone_coupling(l2, l3);
    REQUIRE(c12.dominated());
    REQUIRE(c23.dominated());
    const auto c13 = relative_product(*c12.coupling, *c23.coupling);
    CHECK(c13.is_monotone());
    CHECK(c13.first_marginal().max_difference(l1) < 1e-9);
    CHECK(c13.second_marginal().max_difference(l3) < 1e-9);
  }
}
