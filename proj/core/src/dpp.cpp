#include "sofic/dpp.hpp"

#include "sofic/error.hpp"

#include <algorithm>
#include <cmath>

namespace sofic {

namespace {

double determinant(const Matrix& m) {
  if (m.rows() == 0) return 1.0;
  return m.partialPivLu().determinant();
}

std::size_t binomial_capped(std::size_t n, std::size_t k, std::size_t cap) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  long double c = 1;
  for (std::size_t i = 1; i <= k; ++i) {
    c = c * static_cast<long double>(n - k + i) / static_cast<long double>(i);
    if (c > static_cast<long double>(cap)) return cap + 1;
  }
  return static_cast<std::size_t>(std::llround(c));
}

void check_indices(const DeterminantalMeasure& d, std::span<const std::size_t> a,
                   std::span<const std::size_t> c) {
  std::vector<char> seen(d.ground_size(), 0);
  for (auto e : a) {
    if (e >= d.ground_size()) throw InvalidArgument("cylinder_prob: element outside ground set");
    if (seen[e]) throw InvalidArgument("cylinder_prob: repeated element");
    seen[e] = 1;
  }
  for (auto e : c) {
    if (e >= d.ground_size()) throw InvalidArgument("cylinder_prob: element outside ground set");
    if (seen[e]) throw InvalidArgument("cylinder_prob: include and exclude sets overlap");
    seen[e] = 2;
  }
}

}  // namespace

DeterminantalMeasure::DeterminantalMeasure(Matrix kernel, std::vector<std::string> labels)
    : kernel_(std::move(kernel)), labels_(std::move(labels)) {
  require_symmetric(kernel_, 1e-12, "DeterminantalMeasure");
  if (labels_.empty()) {
    for (Eigen::Index i = 0; i < kernel_.rows(); ++i) labels_.push_back(std::to_string(i));
  }
  if (labels_.size() != static_cast<std::size_t>(kernel_.rows())) {
    throw InvalidArgument("DeterminantalMeasure: label count differs from kernel size");
  }
  eigen_ = symmetric_eigen(kernel_);
  if (eigen_.values.size() > 0 &&
      (eigen_.values.minCoeff() < -kSpectrumTolerance ||
       eigen_.values.maxCoeff() > 1.0 + kSpectrumTolerance)) {
    throw InvalidArgument("DeterminantalMeasure: kernel is not a positive contraction");
  }
}

bool DeterminantalMeasure::is_projection(double tol) const {
  for (Eigen::Index i = 0; i < eigen_.values.size(); ++i) {
    const double x = eigen_.values[i];
    if (std::abs(x) > tol && std::abs(x - 1.0) > tol) return false;
  }
  return true;
}

std::size_t DeterminantalMeasure::projection_rank() const {
  return static_cast<std::size_t>((eigen_.values.array() > 0.5).count());
}

double cylinder_prob(const DeterminantalMeasure& d, std::span<const std::size_t> include,
                     std::span<const std::size_t> exclude) {
  check_indices(d, include, exclude);
  std::vector<int> index;
  for (auto e : include) index.push_back(static_cast<int>(e));
  for (auto e : exclude) index.push_back(static_cast<int>(e));
  Matrix m = principal_submatrix(d.kernel(), index);
  for (std::size_t i = include.size(); i < index.size(); ++i) {
    const auto k = static_cast<Eigen::Index>(i);
    m(k, k) -= 1.0;
  }
  const double det = determinant(m);
  return (exclude.size() % 2 == 0) ? det : -det;
}

double cylinder_prob(const DeterminantalMeasure& d, Mask include, Mask exclude) {
  if (include & exclude) throw InvalidArgument("cylinder_prob: include and exclude sets overlap");
  const auto a = elements_of(include);
  const auto c = elements_of(exclude);
  return cylinder_prob(d, a, c);
}

double cylinder_prob_inclusion_exclusion(const DeterminantalMeasure& d, Mask include,
                                         Mask exclude) {
  if (include & exclude) throw InvalidArgument("cylinder_prob: include and exclude sets overlap");
  if (popcount(exclude) > 20) throw CapacityExceeded("inclusion-exclusion: |C| > 20");
  if (!is_subset(include | exclude, full_mask(d.ground_size()))) {
    throw InvalidArgument("cylinder_prob: element outside ground set");
  }
  double sum = 0.0;
  // iterate over all subsets D of exclude
  Mask sub = exclude;
  for (;;) {
    const auto idx = int_elements_of(include | sub);
    const double minor = determinant(principal_submatrix(d.kernel(), idx));
    sum += (popcount(sub) % 2 == 0) ? minor : -minor;
    if (sub == 0) break;
    sub = (sub - 1) & exclude;
  }
  return sum;
}

namespace {

// |p| below this is determinant round-off, not mass
constexpr double kRoundoffAtom = 1e-15;

SubsetDistribution without_roundoff(std::vector<std::string> labels,
                                    std::vector<std::pair<Mask, double>> atoms) {
  std::erase_if(atoms, [](const auto& a) { return std::abs(a.second) <= kRoundoffAtom; });
  return SubsetDistribution(std::move(labels), std::move(atoms));
}

}  // namespace

SubsetDistribution exact_distribution(const DeterminantalMeasure& d) {
  const std::size_t n = d.ground_size();
  std::vector<std::pair<Mask, double>> atoms;
  if (n <= DeterminantalMeasure::kMaxEnumeratedGround) {
    const Mask universe = full_mask(n);
    atoms.reserve(std::size_t{1} << n);
    for (Mask b = 0;; ++b) {
      atoms.emplace_back(b, cylinder_prob(d, b, universe & ~b));
      if (b == universe) break;
    }
    return without_roundoff(d.labels(), std::move(atoms));
  }
  if (n > kMaxGroundSize || !d.is_projection()) {
    throw CapacityExceeded("exact_distribution: ground set of " + std::to_string(n) +
                           " elements is too large for a non-projection kernel");
  }
  const std::size_t r = d.projection_rank();
  if (binomial_capped(n, r, DeterminantalMeasure::kMaxProjectionSubsets) >
      DeterminantalMeasure::kMaxProjectionSubsets) {
    throw CapacityExceeded("exact_distribution: too many subsets of size rank");
  }
  // a projection kernel of rank r gives |X| = r almost surely, so
  // P[X = B] = det(Q restricted to B) for |B| = r
  std::vector<int> combo(r);
  for (std::size_t i = 0; i < r; ++i) combo[i] = static_cast<int>(i);
  for (;;) {
    Mask m = 0;
    for (int e : combo) m |= Mask{1} << e;
    atoms.emplace_back(m, determinant(principal_submatrix(d.kernel(), combo)));
    std::size_t i = r;
    while (i > 0 && combo[i - 1] == static_cast<int>(n - r + i - 1)) --i;
    if (i == 0) break;
    ++combo[i - 1];
    for (std::size_t j = i; j < r; ++j) combo[j] = combo[j - 1] + 1;
  }
  return without_roundoff(d.labels(), std::move(atoms));
}

std::vector<std::size_t> sample(const DeterminantalMeasure& d, Rng& rng) {
  const auto n = static_cast<Eigen::Index>(d.ground_size());
  std::vector<Eigen::Index> chosen;
  for (Eigen::Index j = 0; j < d.eigen_.values.size(); ++j) {
    const double lambda = std::clamp(d.eigen_.values[j], 0.0, 1.0);
    if (rng.uniform() < lambda) chosen.push_back(j);
  }
  Matrix basis(n, static_cast<Eigen::Index>(chosen.size()));
  for (std::size_t c = 0; c < chosen.size(); ++c) {
    basis.col(static_cast<Eigen::Index>(c)) = d.eigen_.vectors.col(chosen[c]);
  }

  std::vector<std::size_t> picked;
  while (basis.cols() > 0) {
    const Eigen::Index k = basis.cols();
    const Vector weight = basis.rowwise().squaredNorm();
    const double total = weight.sum();
    double u = rng.uniform() * total;
    Eigen::Index e = 0;
    for (; e < n - 1; ++e) {
      if (u < weight[e]) break;
      u -= weight[e];
    }
    // guard against landing on a zero-weight row through round-off
    while (weight[e] <= 0 && e > 0) --e;
    picked.push_back(static_cast<std::size_t>(e));

    Eigen::Index pivot = 0;
    basis.row(e).cwiseAbs().maxCoeff(&pivot);
    const Vector pivot_col = basis.col(pivot);
    for (Eigen::Index j = 0; j < k; ++j) {
      if (j == pivot) continue;
      basis.col(j) -= (basis(e, j) / pivot_col[e]) * pivot_col;
    }
    if (pivot != k - 1) basis.col(pivot) = basis.col(k - 1);
    basis.conservativeResize(Eigen::NoChange, k - 1);
    if (basis.cols() > 0) {
      Eigen::HouseholderQR<Matrix> qr(basis);
      basis = qr.householderQ() * Matrix::Identity(n, basis.cols());
    }
  }
  std::sort(picked.begin(), picked.end());
  return picked;
}

Mask sample_mask(const DeterminantalMeasure& d, Rng& rng) {
  if (d.ground_size() > kMaxGroundSize) throw CapacityExceeded("sample_mask: ground set > 63");
  return mask_of(sample(d, rng));
}

}  // namespace sofic
