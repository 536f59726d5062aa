#pragma once

#include "sofic/rng.hpp"
#include "sofic/subset.hpp"

#include <optional>
#include <string>
#include <vector>

namespace sofic {

struct CouplingAtom {
  Mask first = 0;
  Mask second = 0;
  double probability = 0.0;

  friend bool operator==(const CouplingAtom&, const CouplingAtom&) = default;
};

/// Joint law of two random subsets of a common ground set, kept as a sparse
/// list of atoms sorted by (first, second).
class Coupling {
 public:
  Coupling() = default;
  /// Merges duplicate pairs, drops non-positive atoms and checks the total
  /// mass is 1 within 1e-9.
  Coupling(std::vector<std::string> labels, std::vector<CouplingAtom> atoms);

  [[nodiscard]] const std::vector<std::string>& labels() const noexcept { return labels_; }
  [[nodiscard]] std::size_t ground_size() const noexcept { return labels_.size(); }
  [[nodiscard]] const std::vector<CouplingAtom>& atoms() const noexcept { return atoms_; }
  /// first subset of second on every atom.
  [[nodiscard]] bool is_monotone() const;
  [[nodiscard]] SubsetDistribution first_marginal() const;
  [[nodiscard]] SubsetDistribution second_marginal() const;
  /// E|X1 symmetric-difference X2| / |E|.
  [[nodiscard]] double disagreement() const;
  /// Index of an atom drawn with its probability.
  [[nodiscard]] std::size_t sample_atom(Rng& rng) const;

  /// {"labels": [...], "monotone": b, "atoms": [[mask1, mask2, p], ...]}
  [[nodiscard]] std::string to_json() const;
  static Coupling from_json(const std::string& text);

 private:
  std::vector<std::string> labels_;
  std::vector<CouplingAtom> atoms_;
  std::vector<double> cumulative_;
};

/// Up-closed event given by its minimal elements, with the masses the two
/// laws assign to it; a witness of non-domination has first_mass > second_mass.
struct IncreasingEvent {
  std::vector<Mask> generators;
  double first_mass = 0.0;
  double second_mass = 0.0;
};

/// Mass of the up-closure of `generators`.
double up_closure_mass(const SubsetDistribution& law, const std::vector<Mask>& generators);

struct MonotoneCouplingResult {
  double flow_value = 0.0;
  std::optional<Coupling> coupling;       // set when dominated
  std::optional<IncreasingEvent> witness;  // set otherwise

  [[nodiscard]] bool dominated() const noexcept { return coupling.has_value(); }
};

/// Strassen test by max-flow between the supports with arcs A1 -> A2 for
/// A1 subset of A2. Flow value 1 (within 1e-9) yields a monotone coupling;
/// otherwise the residual source side gives an increasing event charged more
/// by `lower` than by `upper`. Throws CapacityExceeded past 4e6 arcs.
MonotoneCouplingResult monotone_coupling(const SubsetDistribution& lower,
                                         const SubsetDistribution& upper);

struct DbarResult {
  double value = 0.0;
  Coupling optimal;
};

/// min over couplings of E|X1 symmetric-difference X2| / |E|, as an exact
/// transportation problem with Hamming cost. Common mass min(p, q) stays on
/// the diagonal; the remaining surplus x deficit network is capped at 4e6 arcs
/// (CapacityExceeded).
DbarResult dbar(const SubsetDistribution& a, const SubsetDistribution& b);

/// Mean over sites of P2[e in X] - P1[e in X]. Throws InvalidState when no
/// monotone coupling exists.
double dbar_monotone(const SubsetDistribution& lower, const SubsetDistribution& upper);

/// Gluing of (X1, X2) and (X2', X3) with X2 = X2' and X1, X3 conditionally
/// independent given X2; returns the (X1, X3) marginal. Throws InvalidArgument
/// if the middle marginals differ by more than 1e-9.
Coupling relative_product(const Coupling& first, const Coupling& second);

/// Product coupling of two laws.
Coupling independent_coupling(const SubsetDistribution& a, const SubsetDistribution& b);
/// (X, X) for X with the given law.
Coupling diagonal_coupling(const SubsetDistribution& law);

}  // namespace sofic
