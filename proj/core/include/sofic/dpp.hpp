#pragma once

#include "sofic/linalg.hpp"
#include "sofic/rng.hpp"
#include "sofic/subset.hpp"

#include <span>
#include <string>
#include <vector>

namespace sofic {

/// Determinantal probability measure P[A subset of X] = det(Q restricted to A)
/// of a positive contraction Q.
class DeterminantalMeasure {
 public:
  static constexpr double kSpectrumTolerance = 1e-12;
  /// Largest ground set handled by full enumeration in exact_distribution.
  static constexpr std::size_t kMaxEnumeratedGround = 14;
  /// Largest number of fixed-cardinality subsets enumerated for projection kernels.
  static constexpr std::size_t kMaxProjectionSubsets = std::size_t{1} << 20;

  /// Throws InvalidArgument unless `kernel` is symmetric (1e-12) with spectrum
  /// in [0, 1] within kSpectrumTolerance. Labels default to "0".."n-1".
  explicit DeterminantalMeasure(Matrix kernel, std::vector<std::string> labels = {});

  [[nodiscard]] const Matrix& kernel() const noexcept { return kernel_; }
  [[nodiscard]] const std::vector<std::string>& labels() const noexcept { return labels_; }
  [[nodiscard]] std::size_t ground_size() const noexcept { return labels_.size(); }
  [[nodiscard]] const Vector& eigenvalues() const noexcept { return eigen_.values; }
  /// Expected size of the random set: trace of the kernel.
  [[nodiscard]] double expected_size() const { return kernel_.trace(); }
  /// Whether every eigenvalue is within `tol` of 0 or 1.
  [[nodiscard]] bool is_projection(double tol = 1e-9) const;
  /// Number of eigenvalues above 1/2 (the rank for projections).
  [[nodiscard]] std::size_t projection_rank() const;

 private:
  friend std::vector<std::size_t> sample(const DeterminantalMeasure&, Rng&);
  Matrix kernel_;
  std::vector<std::string> labels_;
  SymmetricEigen eigen_;
};

/// P[include subset of X, exclude disjoint from X] as
/// (-1)^|C| det[(Q - I_C) restricted to A u C].
double cylinder_prob(const DeterminantalMeasure& measure, std::span<const std::size_t> include,
                     std::span<const std::size_t> exclude);
double cylinder_prob(const DeterminantalMeasure& measure, Mask include, Mask exclude);

/// Same probability by inclusion-exclusion over subsets of `exclude`
/// (2^|C| principal minors). Reference route, |C| <= 20.
double cylinder_prob_inclusion_exclusion(const DeterminantalMeasure& measure, Mask include,
                                         Mask exclude);

/// Law of X. Full enumeration for ground sets up to 14; projection kernels on
/// larger ground sets enumerate subsets of size rank. Throws CapacityExceeded
/// otherwise.
SubsetDistribution exact_distribution(const DeterminantalMeasure& measure);

/// Exact sample: eigenvectors kept independently with probability equal to
/// their eigenvalue, then the projection measure is sampled point by point.
/// Returns sorted element indices.
std::vector<std::size_t> sample(const DeterminantalMeasure& measure, Rng& rng);
Mask sample_mask(const DeterminantalMeasure& measure, Rng& rng);

}  // namespace sofic
