#pragma once

#include "sofic/graph.hpp"
#include "sofic/group_ring.hpp"
#include "sofic/linalg.hpp"
#include "sofic/schreier.hpp"

#include <span>
#include <string>
#include <utility>
#include <vector>

namespace sofic {

/// Dense real matrix over a labelled ground set.
struct OperatorMatrix {
  std::vector<std::string> labels;
  Matrix entries;

  OperatorMatrix() = default;
  OperatorMatrix(std::vector<std::string> ground_labels, Matrix m);
  /// Ground labels "0", "1", ...
  explicit OperatorMatrix(Matrix m);

  [[nodiscard]] Eigen::Index size() const noexcept { return entries.rows(); }
  /// Symmetric within 1e-12.
  [[nodiscard]] bool is_symmetric(double tol = 1e-12) const;
};

/// rho_G(a): sum of c * pi(w) with pi(w) delta_v = delta_{v.w^-1}.
OperatorMatrix represent(const GroupRingElement& a, const SchreierGraph& graph);

/// (1/n) * trace.
double normalized_trace(const Matrix& m);

/// Finitely supported probability measure on the real line.
struct SpectralMeasure {
  std::vector<std::pair<double, double>> atoms;  // (eigenvalue, weight), ascending

  [[nodiscard]] double moment(int k) const;
  /// mu((-inf, x]).
  [[nodiscard]] double cdf(double x) const;
  [[nodiscard]] double mass_at(double x, double tol = 1e-9) const;
};

/// Eigenvalue distribution with weights multiplicity / n. Eigenvalues closer
/// than `merge_tol` (relative to max(1, spectral radius)) share an atom.
SpectralMeasure spectral_measure(const Matrix& m, double merge_tol = 1e-10);

/// sup_x |F_1(x) - F_2(x)| over the atoms of both measures.
double cdf_sup_distance(const SpectralMeasure& a, const SpectralMeasure& b);

/// dim ker(M) / n with singular values below tol * max(1, sigma_max) treated as 0.
double kernel_fraction(const Matrix& m, double tol = 1e-9);
/// Kernel fraction of rho_G(a); `a` must have integer coefficients.
double kernel_fraction(const GroupRingElement& a, const SchreierGraph& graph, double tol = 1e-9);

enum class SchattenP { One, Two, Infinity };
/// Normalized Schatten norm: mean, root mean square or max of singular values.
double schatten_norm(const Matrix& m, SchattenP p);

/// exp(-A t) for symmetric A by eigendecomposition; t >= 0.
Matrix heat_kernel(const Matrix& laplacian, double t);
/// (1/n) tr exp(-A t) from the eigenvalues of A.
double heat_trace(const Vector& laplacian_eigenvalues, double t);

/// Laplacian (degree minus adjacency) with unit edge weights; loops ignored.
Matrix graph_laplacian(const Multigraph& graph);
/// Laplacian of the spanning subgraph made of the listed edges.
Matrix graph_laplacian(const Multigraph& graph, std::span<const std::size_t> edges);

struct ContractionCheck {
  bool valid = true;
  double max_violation = 0.0;  // distance of the spectrum from [0, 1]
  Matrix clamped;              // eigenvalue-clipped nearest contraction (== input if valid)
};

/// Checks 0 <= M <= I within `tol`; otherwise clips eigenvalues into [0, 1].
ContractionCheck validate_contraction(const Matrix& m, double tol = 1e-12);

}  // namespace sofic
