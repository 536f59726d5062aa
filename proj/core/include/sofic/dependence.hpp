#pragma once

#include "sofic/coupling.hpp"
#include "sofic/dpp.hpp"
#include "sofic/graph.hpp"
#include "sofic/linalg.hpp"
#include "sofic/rng.hpp"

#include <span>
#include <vector>

namespace sofic {

// ------------------------------------------------------------------ d̄ bounds

struct BoundReport {
  std::size_t n = 0;
  double dbar = 0.0;
  double op_norm = 0.0;              // ||Q1 - Q2||
  double trace_norm = 0.0;           // normalized, tau(I) = 1
  double trace_norm_unnormalized = 0.0;
  double norm_bound = 0.0;           // 6r / (1 + 2r)
  double schatten_bound = 0.0;       // 6 * 3^{2/3} * trace_norm^{1/3}
  double conjecture_bound = 0.0;     // trace_norm

  [[nodiscard]] double norm_slack() const { return norm_bound - dbar; }
  [[nodiscard]] double schatten_slack() const { return schatten_bound - dbar; }
  [[nodiscard]] double conjecture_slack() const { return conjecture_bound - dbar; }
  [[nodiscard]] double conjecture_slack_unnormalized() const {
    return trace_norm_unnormalized - dbar;
  }
  [[nodiscard]] bool lemma_violated(double tol = 1e-9) const {
    return norm_slack() < -tol || schatten_slack() < -tol;
  }
};

/// Exact d̄ between the determinantal measures of two positive contractions
/// (n <= 8) together with the operator-norm and trace-norm bounds.
BoundReport bound_suite(const Matrix& q1, const Matrix& q2);

// -------------------------------------------------------------- m-dependence

/// Max over 0/1 patterns of |P[W1 = a, W2 = b] - P[W1 = a] P[W2 = b]|.
/// Throws InvalidArgument if the windows overlap.
double factorization_defect(const DeterminantalMeasure& measure, std::span<const std::size_t> w1,
                            std::span<const std::size_t> w2);

struct MDependenceReport {
  double max_defect = 0.0;
  std::size_t placements = 0;
};

/// Sites are the vertices of the cycle C_n, n = ground size. Checks every
/// pair of contiguous windows of size w whose cyclic distance exceeds m.
MDependenceReport mdependence_check(const DeterminantalMeasure& measure, std::size_t m,
                                    std::size_t w);

/// Symmetric circulant on C_n with entry c_k at cyclic offsets +-k, wrapped
/// modulo n.
Matrix circulant_kernel(std::size_t n, std::span<const double> coefficients);

/// Zeroes the entries whose cyclic distance |i - j| mod n exceeds b.
Matrix band_truncate(const Matrix& kernel, std::size_t b);

/// Largest cyclic offset carrying an entry of absolute value above tol.
std::size_t circulant_bandwidth(const Matrix& kernel, double tol = 1e-12);

/// c_k = a rho^{|k|} truncated once rho^k < 1e-17, with a chosen so that the
/// symbol a (1 - rho^2) / (1 - 2 rho cos t + rho^2) peaks at `peak` <= 1.
std::vector<double> geometric_symbol(double rho, double peak = 0.99);

struct FindepResult {
  Matrix truncated;         // after clamping into [0, I]
  bool clamped = false;
  double clamp_violation = 0.0;
  double dbar = 0.0;        // on the window {0, ..., window - 1}
};

FindepResult finitely_dependent_approx(std::span<const double> coefficients, std::size_t n,
                                       std::size_t b, std::size_t window);

// ------------------------------------------------------- return probabilities

struct ReturnProbRow {
  double t = 0.0;
  double sparse_mean = 0.0;   // first marginal (subset side)
  double dense_mean = 0.0;    // second marginal
  std::size_t violations = 0; // draws with tr e^{-t L1} < tr e^{-t L2} - 1e-12
  double min_gap = 0.0;       // min over draws of the first minus the second trace
};

/// Draws coupled environments A1 subset of A2 (edge-space ids of `graph`) and
/// compares normalized heat-kernel traces of their Laplacians.
std::vector<ReturnProbRow> return_prob_compare(const Multigraph& graph, const Coupling& coupling,
                                               std::span<const double> times,
                                               std::size_t samples, Rng& rng);

}  // namespace sofic
