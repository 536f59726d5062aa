#include "sofic/linalg.hpp"

#include "sofic/error.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <string>

namespace sofic {

double asymmetry(const Matrix& m) {
  if (m.rows() != m.cols()) return INFINITY;
  return (m - m.transpose()).cwiseAbs().maxCoeff();
}

void require_symmetric(const Matrix& m, double tol, const char* what) {
  if (m.rows() != m.cols()) {
    throw InvalidArgument(std::string(what) + ": matrix is not square");
  }
  if (m.size() > 0 && asymmetry(m) > tol) {
    throw InvalidArgument(std::string(what) + ": matrix is not symmetric");
  }
}

SymmetricEigen symmetric_eigen(const Matrix& m) {
  if (m.rows() == 0) return {};
  Eigen::SelfAdjointEigenSolver<Matrix> solver(m);
  if (solver.info() != Eigen::Success) {
    throw InvalidState("symmetric eigendecomposition did not converge");
  }
  return {solver.eigenvalues(), solver.eigenvectors()};
}

Vector symmetric_eigenvalues(const Matrix& m) {
  if (m.rows() == 0) return {};
  Eigen::SelfAdjointEigenSolver<Matrix> solver(m, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw InvalidState("symmetric eigendecomposition did not converge");
  }
  return solver.eigenvalues();
}

Vector singular_values(const Matrix& m) {
  if (m.size() == 0) return {};
  Vector s;
  if (m.rows() == m.cols() && asymmetry(m) == 0.0) {
    s = symmetric_eigenvalues(m).cwiseAbs();
  } else {
    Eigen::BDCSVD<Matrix> svd(m);
    s = svd.singularValues();
  }
  std::sort(s.data(), s.data() + s.size(), std::greater<>());
  return s;
}

Matrix principal_submatrix(const Matrix& m, std::span<const int> index) {
  const auto k = static_cast<Eigen::Index>(index.size());
  Matrix sub(k, k);
  for (Eigen::Index i = 0; i < k; ++i) {
    for (Eigen::Index j = 0; j < k; ++j) {
      sub(i, j) = m(index[static_cast<std::size_t>(i)], index[static_cast<std::size_t>(j)]);
    }
  }
  return sub;
}

double exact_determinant(const Matrix& m) {
  using boost::multiprecision::cpp_rational;
  if (m.rows() != m.cols()) throw InvalidArgument("exact_determinant: not square");
  const auto n = static_cast<std::size_t>(m.rows());
  if (n > 12) throw CapacityExceeded("exact_determinant: n > 12");
  std::vector<std::vector<cpp_rational>> a(n, std::vector<cpp_rational>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      a[i][j] = cpp_rational(m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)));
    }
  }
  cpp_rational det = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && a[pivot][col] == 0) ++pivot;
    if (pivot == n) return 0.0;
    if (pivot != col) {
      std::swap(a[pivot], a[col]);
      det = -det;
    }
    det *= a[col][col];
    for (std::size_t row = col + 1; row < n; ++row) {
      if (a[row][col] == 0) continue;
      const cpp_rational factor = a[row][col] / a[col][col];
      for (std::size_t j = col; j < n; ++j) a[row][j] -= factor * a[col][j];
    }
  }
  return static_cast<double>(det);
}

Matrix column_span_basis(const Matrix& m, double tol) {
  if (m.cols() == 0 || m.rows() == 0) return Matrix(m.rows(), 0);
  Eigen::ColPivHouseholderQR<Matrix> qr(m);
  const double max_diag = qr.matrixQR().diagonal().cwiseAbs().maxCoeff();
  qr.setThreshold(max_diag > 0 ? tol : 1.0);
  const Eigen::Index rank = max_diag > 0 ? qr.rank() : 0;
  Matrix q = qr.householderQ();
  return q.leftCols(rank);
}

Matrix projection_onto(const Matrix& basis, Eigen::Index dim) {
  if (basis.cols() == 0) return Matrix::Zero(dim, dim);
  return basis * basis.transpose();
}

}  // namespace sofic
