// Brute-force reference computations used only by the tests.
#pragma once

#include "sofic/graph.hpp"
#include "sofic/linalg.hpp"
#include "sofic/rng.hpp"
#include "sofic/subset.hpp"

#include <algorithm>
#include <numeric>
#include <vector>

namespace oracle {

using sofic::Mask;

inline bool is_tree_by_union_find(const sofic::Multigraph& g, Mask edges) {
  if (static_cast<std::size_t>(sofic::popcount(edges)) + 1 != g.vertex_count) return false;
  std::vector<std::size_t> parent(g.vertex_count);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    if (!((edges >> e) & 1)) continue;
    const auto a = find(g.edges[e].tail);
    const auto b = find(g.edges[e].head);
    if (a == b) return false;
    parent[a] = b;
  }
  return true;
}

/// Every spanning tree as an edge mask, by scanning all edge subsets.
inline std::vector<Mask> spanning_trees(const sofic::Multigraph& g) {
  std::vector<Mask> out;
  const std::size_t m = g.edges.size();
  for (Mask s = 0; s < (Mask{1} << m); ++s) {
    if (is_tree_by_union_find(g, s)) out.push_back(s);
  }
  return out;
}

/// P[A subset of X, C disjoint from X] by summing atoms.
inline double cylinder(const sofic::SubsetDistribution& d, Mask include, Mask exclude) {
  double sum = 0;
  for (const auto& [m, p] : d.atoms()) {
    if ((m & include) == include && (m & exclude) == 0) sum += p;
  }
  return sum;
}

/// Checks P1(U) <= P2(U) + tol for every up-closed family U of subsets of an
/// n-set, n <= 4, by enumerating all 2^(2^n) families.
inline bool dominated_on_all_increasing_events(const sofic::SubsetDistribution& lower,
                                               const sofic::SubsetDistribution& upper,
                                               double tol = 1e-9) {
  const std::size_t n = lower.ground_size();
  const std::size_t states = std::size_t{1} << n;
  std::vector<double> p1(states, 0.0), p2(states, 0.0);
  for (const auto& [m, p] : lower.atoms()) p1[m] += p;
  for (const auto& [m, p] : upper.atoms()) p2[m] += p;
  for (std::uint64_t family = 0; family < (std::uint64_t{1} << states); ++family) {
    bool up_closed = true;
    for (std::size_t a = 0; a < states && up_closed; ++a) {
      if (!((family >> a) & 1)) continue;
      for (std::size_t e = 0; e < n; ++e) {
        if (!((family >> (a | (std::size_t{1} << e))) & 1)) {
          up_closed = false;
          break;
        }
      }
    }
    if (!up_closed) continue;
    double m1 = 0, m2 = 0;
    for (std::size_t a = 0; a < states; ++a) {
      if ((family >> a) & 1) {
        m1 += p1[a];
        m2 += p2[a];
      }
    }
    if (m1 > m2 + tol) return false;
  }
  return true;
}

/// Random law on subsets of an n-set with the given number of atoms.
inline sofic::SubsetDistribution random_law(std::size_t n, std::size_t atoms, sofic::Rng& rng) {
  std::vector<std::pair<Mask, double>> out;
  double total = 0;
  for (std::size_t i = 0; i < atoms; ++i) {
    const double w = rng.uniform() + 0.01;
    out.emplace_back(rng.below(Mask{1} << n), w);
    total += w;
  }
  for (auto& a : out) a.second /= total;
  return sofic::SubsetDistribution(sofic::SubsetDistribution::default_labels(n), std::move(out));
}

/// Independent Bernoulli(p_i) law.
inline sofic::SubsetDistribution product_law(const std::vector<double>& p) {
  const std::size_t n = p.size();
  std::vector<std::pair<Mask, double>> out;
  for (Mask m = 0; m < (Mask{1} << n); ++m) {
    double w = 1;
    for (std::size_t i = 0; i < n; ++i) w *= ((m >> i) & 1) ? p[i] : 1 - p[i];
    out.emplace_back(m, w);
  }
  return sofic::SubsetDistribution(sofic::SubsetDistribution::default_labels(n), std::move(out));
}

/// Dense matrix of a permutation given as v -> image[v], column v holding e_{image[v]}.
inline sofic::Matrix permutation_matrix(const std::vector<sofic::VertexId>& image) {
  const auto n = static_cast<Eigen::Index>(image.size());
  sofic::Matrix m = sofic::Matrix::Zero(n, n);
  for (Eigen::Index v = 0; v < n; ++v) m(image[static_cast<std::size_t>(v)], v) = 1.0;
  return m;
}

}  // namespace oracle
