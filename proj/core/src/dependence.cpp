#include "sofic/dependence.hpp"

#include "sofic/error.hpp"
#include "sofic/forests.hpp"
#include "sofic/operators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace sofic {

namespace {

constexpr std::size_t kMaxBoundSize = 8;
constexpr std::size_t kMaxWindow = 4;
constexpr std::size_t kMaxFactorWindow = 6;
constexpr std::size_t kMaxFindepWindow = 10;

std::size_t cyclic_distance(std::size_t i, std::size_t j, std::size_t n) {
  const std::size_t d = i > j ? i - j : j - i;
  return std::min(d, n - d);
}

}  // namespace

BoundReport bound_suite(const Matrix& q1, const Matrix& q2) {
  if (q1.rows() != q2.rows()) throw InvalidArgument("bound_suite: kernels differ in size");
  const auto n = static_cast<std::size_t>(q1.rows());
  if (n == 0 || n > kMaxBoundSize) throw CapacityExceeded("bound_suite: need 1 <= n <= 8");
  const DeterminantalMeasure m1(q1);
  const DeterminantalMeasure m2(q2);

  BoundReport report;
  report.n = n;
  report.dbar = dbar(exact_distribution(m1), exact_distribution(m2)).value;
  const Matrix diff = q1 - q2;
  const Vector sigma = singular_values(diff);
  report.op_norm = sigma.size() > 0 ? sigma(0) : 0.0;
  report.trace_norm_unnormalized = sigma.sum();
  report.trace_norm = report.trace_norm_unnormalized / static_cast<double>(n);
  report.norm_bound = 6.0 * report.op_norm / (1.0 + 2.0 * report.op_norm);
  report.schatten_bound = 6.0 * std::cbrt(9.0) * std::cbrt(report.trace_norm);
  report.conjecture_bound = report.trace_norm;
  return report;
}

double factorization_defect(const DeterminantalMeasure& measure, std::span<const std::size_t> w1,
                            std::span<const std::size_t> w2) {
  if (w1.size() > kMaxFactorWindow || w2.size() > kMaxFactorWindow) {
    throw CapacityExceeded("factorization_defect: windows larger than 6");
  }
  const Mask a = mask_of(w1);
  const Mask b = mask_of(w2);
  if ((a & b) != 0 || popcount(a) != static_cast<int>(w1.size()) ||
      popcount(b) != static_cast<int>(w2.size())) {
    throw InvalidArgument("factorization_defect: windows overlap or repeat a site");
  }
  // all patterns inside a window: submasks of the window mask
  auto submasks = [](Mask m) {
    std::vector<Mask> out;
    Mask s = 0;
    for (;;) {
      out.push_back(s);
      if (s == m) break;
      s = (s - m) & m;
    }
    return out;
  };
  const auto pa = submasks(a);
  const auto pb = submasks(b);
  std::vector<double> first;
  std::vector<double> second;
  for (Mask s : pa) first.push_back(cylinder_prob(measure, s, a & ~s));
  for (Mask s : pb) second.push_back(cylinder_prob(measure, s, b & ~s));
  double defect = 0.0;
  for (std::size_t i = 0; i < pa.size(); ++i) {
    for (std::size_t j = 0; j < pb.size(); ++j) {
      const double joint = cylinder_prob(measure, pa[i] | pb[j], (a | b) & ~(pa[i] | pb[j]));
      defect = std::max(defect, std::abs(joint - first[i] * second[j]));
    }
  }
  return defect;
}

MDependenceReport mdependence_check(const DeterminantalMeasure& measure, std::size_t m,
                                    std::size_t w) {
  const std::size_t n = measure.ground_size();
  if (w == 0 || w > kMaxWindow) throw InvalidArgument("mdependence_check: need 1 <= w <= 4");
  if (n < 2 * (w + m)) throw InvalidArgument("mdependence_check: need n >= 2(w + m)");
  MDependenceReport report;
  std::vector<std::size_t> w1(w);
  std::vector<std::size_t> w2(w);
  for (std::size_t start = 0; start < n; ++start) {
    // gap = cyclic distance from the last site of W1 to the first site of W2
    for (std::size_t gap = m + 1; gap + 2 * w <= n + 1; ++gap) {
      const std::size_t back = n + 2 - 2 * w - gap;
      if (back <= m) continue;
      for (std::size_t k = 0; k < w; ++k) {
        w1[k] = (start + k) % n;
        w2[k] = (start + w - 1 + gap + k) % n;
      }
      report.max_defect = std::max(report.max_defect, factorization_defect(measure, w1, w2));
      ++report.placements;
    }
  }
  return report;
}

Matrix circulant_kernel(std::size_t n, std::span<const double> coefficients) {
  if (n == 0) throw InvalidArgument("circulant_kernel: n must be positive");
  const auto size = static_cast<Eigen::Index>(n);
  Matrix q = Matrix::Zero(size, size);
  for (std::size_t k = 0; k < coefficients.size(); ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      const auto row = static_cast<Eigen::Index>(i);
      q(row, static_cast<Eigen::Index>((i + k) % n)) += coefficients[k];
      if (k > 0) q(row, static_cast<Eigen::Index>((i + n - k % n) % n)) += coefficients[k];
    }
  }
  return q;
}

Matrix band_truncate(const Matrix& kernel, std::size_t b) {
  const auto n = static_cast<std::size_t>(kernel.rows());
  Matrix out = kernel;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (cyclic_distance(i, j, n) > b) {
        out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = 0.0;
      }
    }
  }
  return out;
}

std::size_t circulant_bandwidth(const Matrix& kernel, double tol) {
  const auto n = static_cast<std::size_t>(kernel.rows());
  std::size_t band = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (std::abs(kernel(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j))) > tol) {
        band = std::max(band, cyclic_distance(i, j, n));
      }
    }
  }
  return band;
}

std::vector<double> geometric_symbol(double rho, double peak) {
  if (!(rho > 0.0 && rho < 1.0)) throw InvalidArgument("geometric_symbol: need 0 < rho < 1");
  if (!(peak > 0.0 && peak <= 1.0)) throw InvalidArgument("geometric_symbol: need 0 < peak <= 1");
  const double a = peak * (1.0 - rho) / (1.0 + rho);
  std::vector<double> c{a};
  for (double term = a * rho; term > a * 1e-17; term *= rho) c.push_back(term);
  return c;
}

FindepResult finitely_dependent_approx(std::span<const double> coefficients, std::size_t n,
                                       std::size_t b, std::size_t window) {
  if (window == 0 || window > kMaxFindepWindow || window > n) {
    throw InvalidArgument("finitely_dependent_approx: need 1 <= window <= min(n, 10)");
  }
  const auto full = validate_contraction(circulant_kernel(n, coefficients), 1e-9);
  if (!full.valid) {
    throw InvalidArgument("finitely_dependent_approx: symbol does not define a contraction");
  }
  FindepResult result;
  const auto check = validate_contraction(band_truncate(full.clamped, b));
  result.truncated = check.clamped;
  result.clamped = !check.valid;
  result.clamp_violation = check.max_violation;

  std::vector<int> sites(window);
  for (std::size_t i = 0; i < window; ++i) sites[i] = static_cast<int>(i);
  const DeterminantalMeasure exact(principal_submatrix(full.clamped, sites));
  const DeterminantalMeasure approx(principal_submatrix(result.truncated, sites));
  result.dbar = dbar(exact_distribution(exact), exact_distribution(approx)).value;
  return result;
}

std::vector<ReturnProbRow> return_prob_compare(const Multigraph& graph, const Coupling& coupling,
                                               std::span<const double> times,
                                               std::size_t samples, Rng& rng) {
  if (!coupling.is_monotone()) throw InvalidArgument("return_prob_compare: coupling is not monotone");
  if (!graph.is_connected()) throw InvalidArgument("return_prob_compare: graph is not connected");
  const auto space = edge_space(graph);
  if (coupling.ground_size() != space.size()) {
    throw InvalidArgument("return_prob_compare: coupling ground set is not the edge set");
  }
  if (samples == 0) throw InvalidArgument("return_prob_compare: need at least one sample");
  std::vector<ReturnProbRow> rows(times.size());
  for (std::size_t k = 0; k < times.size(); ++k) {
    if (times[k] < 0) throw InvalidArgument("return_prob_compare: negative time");
    rows[k].t = times[k];
    rows[k].min_gap = std::numeric_limits<double>::infinity();
  }
  for (std::size_t s = 0; s < samples; ++s) {
    const auto& atom = coupling.atoms()[coupling.sample_atom(rng)];
    auto sparse = elements_of(atom.first);
    auto dense = elements_of(atom.second);
    for (auto& e : sparse) e = space.source_edge[e];
    for (auto& e : dense) e = space.source_edge[e];
    const Vector e1 = symmetric_eigenvalues(graph_laplacian(graph, sparse));
    const Vector e2 = symmetric_eigenvalues(graph_laplacian(graph, dense));
    for (auto& row : rows) {
      const double h1 = heat_trace(e1, row.t);
      const double h2 = heat_trace(e2, row.t);
      row.sparse_mean += h1;
      row.dense_mean += h2;
      row.min_gap = std::min(row.min_gap, h1 - h2);
      if (h1 < h2 - 1e-12) ++row.violations;
    }
  }
  for (auto& row : rows) {
    row.sparse_mean /= static_cast<double>(samples);
    row.dense_mean /= static_cast<double>(samples);
  }
  return rows;
}

}  // namespace sofic
