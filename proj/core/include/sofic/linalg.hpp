#pragma once

#include <Eigen/Dense>

#include <span>
#include <vector>

namespace sofic {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Eigenvalues (ascending) and orthonormal eigenvectors of a symmetric matrix.
struct SymmetricEigen {
  Vector values;
  Matrix vectors;
};

/// Largest |M(i,j) - M(j,i)|.
double asymmetry(const Matrix& m);

/// Throws InvalidArgument unless `m` is square and symmetric within `tol`.
void require_symmetric(const Matrix& m, double tol, const char* what);

SymmetricEigen symmetric_eigen(const Matrix& m);
Vector symmetric_eigenvalues(const Matrix& m);

/// Singular values, descending. Uses |eigenvalues| when `m` is symmetric.
Vector singular_values(const Matrix& m);

/// Principal submatrix on the listed indices (in the given order).
Matrix principal_submatrix(const Matrix& m, std::span<const int> index);

/// Determinant by exact rational Gaussian elimination on the binary values of
/// the entries, rounded to double at the end. Oracle path; n <= 12.
double exact_determinant(const Matrix& m);

/// Orthonormal basis of the column span of `m`, via pivoted Householder QR
/// with relative rank tolerance `tol`.
Matrix column_span_basis(const Matrix& m, double tol = 1e-9);

/// Orthogonal projection onto the span of the orthonormal columns of `basis`
/// (ambient dimension `dim`; an empty basis gives the zero matrix).
Matrix projection_onto(const Matrix& basis, Eigen::Index dim);

}  // namespace sofic
