#pragma once

#include "sofic/linalg.hpp"
#include "sofic/rng.hpp"

#include <utility>

namespace sofic {

/// Haar-like orthogonal matrix from the QR factorization of a Gaussian matrix
/// with the sign of R's diagonal fixed.
Matrix random_orthogonal(std::size_t n, Rng& rng);

/// U diag(lambda) U^T with lambda iid uniform on [0, 1].
Matrix random_contraction(std::size_t n, Rng& rng);

/// Symmetric square root of a positive semidefinite matrix (negative
/// eigenvalues from round-off are treated as 0).
Matrix psd_sqrt(const Matrix& m);

/// Pair 0 <= Q1 <= Q2 <= I: Q2 = Q1 + (I - Q1)^{1/2} C (I - Q1)^{1/2} with C a
/// random contraction.
std::pair<Matrix, Matrix> random_dominated_pair(std::size_t n, Rng& rng);

}  // namespace sofic
