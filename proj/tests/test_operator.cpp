#include "sofic/error.hpp"
#include "sofic/group_ring.hpp"
#include "sofic/operators.hpp"
#include "sofic/schreier.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace sofic;

namespace {

SchreierGraph cycle_schreier(std::size_t n) { return build_torus(std::vector<std::size_t>{n}); }

GroupRingElement random_word_element(std::size_t len, Rng& rng) {
  static const char letters[] = {'s', 'S', 't', 'T'};
  std::string w;
  for (std::size_t i = 0; i < len; ++i) w += letters[rng.below(4)];
  return GroupRingElement(1.0, w);
}

}  // namespace

TEST_CASE("represent examples") {
  const auto c4 = cycle_schreier(4);
  const auto s = represent(GroupRingElement::parse("s"), c4).entries;
  CHECK(normalized_trace(s) == 0);
  CHECK((s.transpose() * s - Matrix::Identity(4, 4)).norm() == 0);
  // pi(s) delta_v = delta_{v.s^{-1}}
  for (VertexId v = 0; v < 4; ++v) CHECK(s(c4.act(v, 1), v) == 1);
  CHECK((represent(GroupRingElement::parse("sS"), c4).entries - Matrix::Identity(4, 4)).norm() == 0);

  const auto lap = represent(GroupRingElement::parse("2 - s - S"), c4);
  CHECK(lap.is_symmetric());
  const Vector eig = symmetric_eigenvalues(lap.entries);
  const double expected[] = {0, 2, 2, 4};
  for (int i = 0; i < 4; ++i) CHECK(eig(i) == doctest::Approx(expected[i]).epsilon(1e-12));
  CHECK_THROWS_AS(represent(GroupRingElement::parse("u"), c4), InvalidArgument);
}

TEST_CASE("represent is multiplicative on words") {
  Rng rng(8);
  const std::vector<std::size_t> dims{4, 5};
  const auto torus = build_torus(dims);
  const auto free = random_schreier(2, 12, rng);
  for (int trial = 0; trial < 30; ++trial) {
    const auto a = random_word_element(1 + rng.below(5), rng);
    const auto b = random_word_element(1 + rng.below(5), rng);
    for (const auto* g : {&torus, &free}) {
      const Matrix lhs = represent(a * b, *g).entries;
      const Matrix rhs = represent(a, *g).entries * represent(b, *g).entries;
      CHECK((lhs - rhs).norm() == 0);
    }
  }
}

TEST_CASE("normalized trace examples") {
  CHECK(normalized_trace(Matrix::Identity(7, 7)) == 1);
  for (std::size_t n = 2; n <= 9; ++n) {
    const auto c = cycle_schreier(n);
    CHECK(normalized_trace(represent(GroupRingElement::parse("s"), c).entries) == 0);
    CHECK(normalized_trace(represent(GroupRingElement(1, std::string(n, 's')), c).entries) == 1);
  }
}

TEST_CASE("spectral measure examples and moments") {
  const auto id = spectral_measure(Matrix::Identity(5, 5));
  REQUIRE(id.atoms.size() == 1);
  CHECK(id.atoms[0].first == doctest::Approx(1));
  CHECK(id.atoms[0].second == doctest::Approx(1));
  const auto zero = spectral_measure(Matrix::Zero(3, 3));
  REQUIRE(zero.atoms.size() == 1);
  CHECK(zero.atoms[0].first == doctest::Approx(0));

  const auto lap = represent(GroupRingElement::parse("2 - s - S"), cycle_schreier(4)).entries;
  const auto mu = spectral_measure(lap);
  REQUIRE(mu.atoms.size() == 3);
  CHECK(mu.mass_at(0) == doctest::Approx(0.25));
  CHECK(mu.mass_at(2) == doctest::Approx(0.5));
  CHECK(mu.mass_at(4) == doctest::Approx(0.25));
  CHECK(mu.cdf(1.0) == doctest::Approx(0.25));

  Rng rng(3);
  const auto g = random_schreier(2, 40, rng);
  const Matrix m = represent(GroupRingElement::parse("s + S + t + T"), g).entries;
  const auto nu = spectral_measure(m);
  Matrix power = Matrix::Identity(40, 40);
  for (int k = 0; k <= 6; ++k) {
    CHECK(nu.moment(k) == doctest::Approx(normalized_trace(power)).epsilon(1e-9));
    power = power * m;
  }
  Matrix asym = Matrix::Zero(2, 2);
  asym(0, 1) = 1;
  CHECK_THROWS_AS(spectral_measure(asym), InvalidArgument);
}

TEST_CASE("cycle spectra follow the Fourier formula") {
  for (std::size_t n = 3; n <= 12; ++n) {
    const Matrix lap = represent(GroupRingElement::parse("2 - s - S"), cycle_schreier(n)).entries;
    std::vector<double> expected;
    for (std::size_t j = 0; j < n; ++j) {
      expected.push_back(2 - 2 * std::cos(2 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(n)));
    }
    std::sort(expected.begin(), expected.end());
    const Vector eig = symmetric_eigenvalues(lap);
    for (std::size_t j = 0; j < n; ++j) CHECK(eig(static_cast<Eigen::Index>(j)) == doctest::Approx(expected[j]).epsilon(1e-10));
  }
}

TEST_CASE("cdf sup distance") {
  const auto a = spectral_measure(Matrix::Identity(2, 2));
  const auto b = spectral_measure(Matrix::Zero(2, 2));
  CHECK(cdf_sup_distance(a, b) == doctest::Approx(1.0));
  CHECK(cdf_sup_distance(a, a) == 0.0);
}

TEST_CASE("kernel fractions") {
  const auto lap = GroupRingElement::parse("2 - s - S");
  for (std::size_t n = 2; n <= 60; ++n) {
    CHECK(kernel_fraction(lap, cycle_schreier(n)) == doctest::Approx(1.0 / static_cast<double>(n)).epsilon(1e-15));
  }
  CHECK(kernel_fraction(GroupRingElement::parse("1"), cycle_schreier(5)) == 0);
  CHECK(kernel_fraction(GroupRingElement(), cycle_schreier(5)) == 1);
  CHECK_THROWS_AS(kernel_fraction(GroupRingElement::parse("0.5 s"), cycle_schreier(5)), InvalidArgument);
}

TEST_CASE("Schatten norms") {
  CHECK(schatten_norm(Matrix::Identity(4, 4), SchattenP::One) == doctest::Approx(1));
  Matrix p = Matrix::Constant(5, 5, 0.2);
  CHECK(schatten_norm(p, SchattenP::One) == doctest::Approx(0.2));
  Matrix d = Matrix::Zero(3, 3);
  d.diagonal() << 1, -2, 0.5;
  CHECK(schatten_norm(d, SchattenP::One) == doctest::Approx(3.5 / 3));
  CHECK(schatten_norm(d, SchattenP::Two) == doctest::Approx(std::sqrt(5.25 / 3)));
  CHECK(schatten_norm(d, SchattenP::Infinity) == doctest::Approx(2));
}

TEST_CASE("heat kernels") {
  const Matrix lap = graph_laplacian(Multigraph(2, {{0, 1}}));
  CHECK((heat_kernel(lap, 0) - Matrix::Identity(2, 2)).norm() < 1e-14);
  for (double t : {0.1, 1.0, 3.0}) {
    const Matrix h = heat_kernel(lap, t);
    CHECK(h(0, 0) == doctest::Approx((1 + std::exp(-2 * t)) / 2).epsilon(1e-12));
    CHECK(h(0, 1) == doctest::Approx((1 - std::exp(-2 * t)) / 2).epsilon(1e-12));
  }
  const Matrix isolated = graph_laplacian(Multigraph(1));
  CHECK(heat_kernel(isolated, 5.0)(0, 0) == doctest::Approx(1));
  CHECK_THROWS_AS(heat_kernel(lap, -1.0), InvalidArgument);

  Rng rng(4);
  const auto g = random_schreier(2, 30, rng).underlying_graph();
  const Matrix big = graph_laplacian(g);
  for (double t : {0.5, 2.0}) {
    const Matrix h = heat_kernel(big, t);
    CHECK(h.minCoeff() >= -1e-12);
    CHECK((h - h.transpose()).norm() < 1e-12);
    for (Eigen::Index i = 0; i < h.rows(); ++i) CHECK(h.row(i).sum() == doctest::Approx(1).epsilon(1e-9));
    CHECK(heat_trace(symmetric_eigenvalues(big), t) == doctest::Approx(normalized_trace(h)).epsilon(1e-12));
  }
}

TEST_CASE("graph laplacians ignore loops and respect edge subsets") {
  const Multigraph g(3, {{0, 1}, {1, 2}, {1, 1}});
  const Matrix l = graph_laplacian(g);
  CHECK(l(1, 1) == 2);
  CHECK(l(0, 1) == -1);
  const std::vector<std::size_t> sub{0};
  const Matrix ls = graph_laplacian(g, sub);
  CHECK(ls(2, 2) == 0);
  CHECK(ls(1, 1) == 1);
}

TEST_CASE("validate_contraction") {
  const Matrix proj = Matrix::Constant(3, 3, 1.0 / 3);
  CHECK(validate_contraction(proj).valid);
  const auto twice = validate_contraction(2 * Matrix::Identity(3, 3));
  CHECK_FALSE(twice.valid);
  CHECK(twice.max_violation == doctest::Approx(1.0));
  CHECK((twice.clamped - Matrix::Identity(3, 3)).norm() < 1e-12);
  Matrix d = Matrix::Zero(2, 2);
  d(0, 0) = 0.5;
  d(1, 1) = -1e-15;
  CHECK(validate_contraction(d, 1e-12).valid);
  Matrix asym = Matrix::Zero(2, 2);
  asym(0, 1) = 0.3;
  CHECK_THROWS_AS(validate_contraction(asym), InvalidArgument);
}
