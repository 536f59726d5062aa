#include "sofic/dpp.hpp"
#include "sofic/error.hpp"
#include "sofic/forests.hpp"
#include "sofic/random_matrix.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <map>

using namespace sofic;

namespace {

Matrix diag(std::initializer_list<double> values) {
  Vector v(static_cast<Eigen::Index>(values.size()));
  Eigen::Index i = 0;
  for (double x : values) v(i++) = x;
  return v.asDiagonal();
}

}  // namespace

TEST_CASE("construction validates the kernel") {
  CHECK_THROWS_AS(DeterminantalMeasure(2 * Matrix::Identity(2, 2)), InvalidArgument);
  Matrix asym = Matrix::Zero(2, 2);
  asym(0, 1) = 0.2;
  CHECK_THROWS_AS(DeterminantalMeasure{asym}, InvalidArgument);
  CHECK_THROWS_AS(DeterminantalMeasure(Matrix::Identity(2, 2), {"a"}), InvalidArgument);
  const DeterminantalMeasure m(diag({0.5, 0.25}));
  CHECK(m.labels() == std::vector<std::string>{"0", "1"});
  CHECK(m.expected_size() == doctest::Approx(0.75));
  CHECK_FALSE(m.is_projection());
}

TEST_CASE("cylinder probability examples") {
  const DeterminantalMeasure m(diag({0.2, 0.7, 0.4, 0.9}));
  CHECK(cylinder_prob(m, Mask{0}, Mask{0}) == doctest::Approx(1.0));
  CHECK(cylinder_prob(m, 0b0011, 0b0100) == doctest::Approx(0.2 * 0.7 * 0.6));
  CHECK(cylinder_prob(m, 0b1000, 0b0111) == doctest::Approx(0.9 * 0.8 * 0.3 * 0.6));
  CHECK_THROWS_AS(cylinder_prob(m, 0b0011, 0b0010), InvalidArgument);

  const DeterminantalMeasure k3(transfer_current(complete_graph(3)));
  for (std::size_t e = 0; e < 3; ++e) {
    CHECK(cylinder_prob(k3, Mask{1} << e, Mask{0}) == doctest::Approx(2.0 / 3).epsilon(1e-12));
  }
  const std::vector<std::size_t> inc{0}, exc{1};
  CHECK(cylinder_prob(k3, inc, exc) == doctest::Approx(1.0 / 3).epsilon(1e-12));
}

TEST_CASE("signed determinant matches inclusion-exclusion and exact determinants") {
  Rng rng(21);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 2 + rng.below(5);
    const DeterminantalMeasure m(random_contraction(n, rng));
    for (int k = 0; k < 10; ++k) {
      const Mask a = rng.below(Mask{1} << n);
      const Mask c = rng.below(Mask{1} << n) & ~a;
      const double direct = cylinder_prob(m, a, c);
      CHECK(direct == doctest::Approx(cylinder_prob_inclusion_exclusion(m, a, c)).epsilon(1e-10));
      CHECK(direct >= -1e-10);
      CHECK(direct <= 1 + 1e-10);
      if (c == 0) {
        const auto idx = int_elements_of(a);
        CHECK(direct == doctest::Approx(exact_determinant(principal_submatrix(m.kernel(), idx))).epsilon(1e-10));
      }
    }
  }
}

TEST_CASE("exact distribution examples") {
  const auto uniform = exact_distribution(DeterminantalMeasure(diag({0.5, 0.5, 0.5})));
  CHECK(uniform.support_size() == 8);
  for (const auto& [m, p] : uniform.atoms()) CHECK(p == doctest::Approx(0.125));

  const auto k3 = exact_distribution(DeterminantalMeasure(transfer_current(complete_graph(3))));
  CHECK(k3.support_size() == 3);
  for (const auto& [m, p] : k3.atoms()) {
    CHECK(popcount(m) == 2);
    CHECK(p == doctest::Approx(1.0 / 3).epsilon(1e-12));
  }

  const auto zero = exact_distribution(DeterminantalMeasure(Matrix::Zero(4, 4)));
  CHECK(zero.support_size() == 1);
  CHECK(zero.probability(0) == doctest::Approx(1.0));

  CHECK_THROWS_AS(exact_distribution(DeterminantalMeasure(0.5 * Matrix::Identity(15, 15))),
                  CapacityExceeded);
}

TEST_CASE("projection kernels beyond the enumeration cap") {
  const auto g = torus_graph(3, 3);
  const auto law = exact_distribution(ust_measure(g));
  const auto trees = oracle::spanning_trees(torus_graph(3, 3));
  CHECK(trees.size() == 11664);
  CHECK(law.support_size() == trees.size());
  double worst = 0;
  for (Mask t : trees) worst = std::max(worst, std::abs(law.probability(t) - 1.0 / 11664));
  CHECK(worst < 1e-9);
}

TEST_CASE("nonnegativity, normalization and marginals on random contractions") {
  Rng rng(99);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + rng.below(8);
    const DeterminantalMeasure m(random_contraction(n, rng));
    const auto law = exact_distribution(m);
    CHECK(law.max_clamp() <= 1e-10);
    CHECK(law.total() == doctest::Approx(1.0).epsilon(1e-9));
    for (int k = 0; k < 5; ++k) {
      const Mask a = rng.below(Mask{1} << n);
      const double det = principal_submatrix(m.kernel(), int_elements_of(a)).determinant();
      CHECK(std::abs(law.inclusion_probability(a) - det) <= 1e-9);
    }
  }
}

TEST_CASE("complement duality") {
  Rng rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 1 + rng.below(7);
    const Matrix q = random_contraction(n, rng);
    const auto law = exact_distribution(DeterminantalMeasure(q));
    const auto dual = exact_distribution(DeterminantalMeasure(Matrix::Identity(n, n) - q));
    CHECK(dual.max_difference(law.complement()) <= 1e-9);
  }
}

TEST_CASE("sampler edge cases") {
  Rng rng(1);
  const DeterminantalMeasure zero(Matrix::Zero(5, 5));
  const DeterminantalMeasure one(Matrix::Identity(5, 5));
  for (int i = 0; i < 20; ++i) {
    CHECK(sample(zero, rng).empty());
    CHECK(sample(one, rng).size() == 5);
  }
  const auto g = complete_graph(5);
  const auto ust = ust_measure(g);
  CHECK(ust.is_projection());
  CHECK(ust.projection_rank() == 4);
  for (int i = 0; i < 50; ++i) CHECK(sample(ust, rng).size() == 4);
}

TEST_CASE("sampler matches the exact law within four standard deviations") {
  Rng rng(77);
  for (std::size_t n : {3u, 5u, 6u}) {
    const DeterminantalMeasure m(random_contraction(n, rng));
    const auto law = exact_distribution(m);
    const int draws = 100000;
    std::map<Mask, int> counts;
    for (int i = 0; i < draws; ++i) ++counts[sample_mask(m, rng)];
    for (Mask b = 0; b < (Mask{1} << n); ++b) {
      const double p = law.probability(b);
      const double sigma = std::sqrt(p * (1 - p) / draws);
      const double freq = static_cast<double>(counts[b]) / draws;
      CHECK(std::abs(freq - p) <= 4 * sigma + 1e-12);
    }
  }
}

TEST_CASE("sampling is deterministic per seed") {
  const DeterminantalMeasure m(transfer_current(complete_graph(4)));
  Rng a(5), b(5);
  for (int i = 0; i < 20; ++i) CHECK(sample(m, a) == sample(m, b));
}

TEST_CASE("subset distribution plumbing") {
  const auto law = oracle::product_law({0.3, 0.6, 0.9});
  const auto csv = law.to_csv();
  const auto back = SubsetDistribution::from_csv(csv, law.labels());
  CHECK(back.max_difference(law) == 0.0);
  CHECK(back.to_csv() == csv);
  const std::vector<std::size_t> window{2, 0};
  const auto r = law.restrict_to(window);
  CHECK(r.marginals()[0] == doctest::Approx(0.9));
  CHECK(r.marginals()[1] == doctest::Approx(0.3));
  CHECK_THROWS_AS(SubsetDistribution(SubsetDistribution::default_labels(2), {{0, 0.5}}), InvalidArgument);
  CHECK_THROWS_AS(SubsetDistribution(SubsetDistribution::default_labels(2), {{0, 1.0}, {4, 0.0}}),
                  InvalidArgument);
  CHECK_THROWS_AS(SubsetDistribution(SubsetDistribution::default_labels(2), {{0, 1.1}, {1, -0.1}}),
                  InvalidState);
  CHECK_THROWS_AS(SubsetDistribution::from_csv("bad\n", law.labels()), InvalidArgument);
}
