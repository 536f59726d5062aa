#pragma once

#include <bit>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace sofic {

/// Subset of a ground set of at most 63 elements, bit i = element i.
using Mask = std::uint64_t;

inline constexpr std::size_t kMaxGroundSize = 63;

inline int popcount(Mask m) noexcept { return std::popcount(m); }
inline bool is_subset(Mask a, Mask b) noexcept { return (a & ~b) == 0; }
inline Mask full_mask(std::size_t n) noexcept { return n == 0 ? 0 : (~Mask{0} >> (64 - n)); }

Mask mask_of(std::span<const std::size_t> elements);
std::vector<std::size_t> elements_of(Mask m);
std::vector<int> int_elements_of(Mask m);

/// Probability law of a random subset, stored sparsely as (mask, p) atoms
/// sorted by mask with p > 0.
class SubsetDistribution {
 public:
  /// Tolerance on the total mass.
  static constexpr double kSumTolerance = 1e-9;
  /// Largest negative entry that may be clamped to zero.
  static constexpr double kClampFailure = 1e-8;

  SubsetDistribution() = default;
  /// Merges duplicate masks, clamps negative entries to zero (recording the
  /// largest clamp) and validates the total. Throws InvalidState if a clamp
  /// exceeds kClampFailure, InvalidArgument if the total is off by more than
  /// kSumTolerance or a mask leaves the ground set.
  SubsetDistribution(std::vector<std::string> labels, std::vector<std::pair<Mask, double>> atoms);
  /// Point mass on `mask`.
  static SubsetDistribution point_mass(std::vector<std::string> labels, Mask mask);
  /// Default labels "0".."n-1".
  static std::vector<std::string> default_labels(std::size_t n);

  [[nodiscard]] std::size_t ground_size() const noexcept { return labels_.size(); }
  [[nodiscard]] const std::vector<std::string>& labels() const noexcept { return labels_; }
  [[nodiscard]] const std::vector<std::pair<Mask, double>>& atoms() const noexcept { return atoms_; }
  [[nodiscard]] std::size_t support_size() const noexcept { return atoms_.size(); }
  [[nodiscard]] double max_clamp() const noexcept { return max_clamp_; }
  [[nodiscard]] double total() const;

  [[nodiscard]] double probability(Mask m) const;
  /// P[A subset of X].
  [[nodiscard]] double inclusion_probability(Mask a) const;
  /// P[e in X] per element.
  [[nodiscard]] std::vector<double> marginals() const;
  /// Law of the complement of X.
  [[nodiscard]] SubsetDistribution complement() const;
  /// Law of X intersected with the elements of `window`, relabelled 0..|window|-1.
  [[nodiscard]] SubsetDistribution restrict_to(std::span<const std::size_t> window) const;
  /// max_B |P(B) - Q(B)| over the union of supports.
  [[nodiscard]] double max_difference(const SubsetDistribution& other) const;

  /// CSV with header "mask,probability".
  [[nodiscard]] std::string to_csv() const;
  static SubsetDistribution from_csv(const std::string& text, std::vector<std::string> labels);

 private:
  std::vector<std::string> labels_;
  std::vector<std::pair<Mask, double>> atoms_;
  double max_clamp_ = 0.0;
};

/// Shortest round-trip decimal for a double.
std::string format_double(double x);

}  // namespace sofic
