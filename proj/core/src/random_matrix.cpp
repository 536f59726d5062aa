#include "sofic/random_matrix.hpp"

namespace sofic {

Matrix random_orthogonal(std::size_t n, Rng& rng) {
  const auto size = static_cast<Eigen::Index>(n);
  Matrix g(size, size);
  for (Eigen::Index j = 0; j < size; ++j) {
    for (Eigen::Index i = 0; i < size; ++i) g(i, j) = rng.normal();
  }
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < size; ++j) {
    if (r(j, j) < 0) q.col(j) *= -1.0;
  }
  return q;
}

Matrix random_contraction(std::size_t n, Rng& rng) {
  const Matrix u = random_orthogonal(n, rng);
  Vector lambda(static_cast<Eigen::Index>(n));
  for (Eigen::Index i = 0; i < lambda.size(); ++i) lambda(i) = rng.uniform();
  Matrix q = u * lambda.asDiagonal() * u.transpose();
  return (q + q.transpose()) / 2.0;
}

Matrix psd_sqrt(const Matrix& m) {
  const auto eig = symmetric_eigen(m);
  const Vector root = eig.values.cwiseMax(0.0).cwiseSqrt();
  Matrix s = eig.vectors * root.asDiagonal() * eig.vectors.transpose();
  return (s + s.transpose()) / 2.0;
}

std::pair<Matrix, Matrix> random_dominated_pair(std::size_t n, Rng& rng) {
  Matrix q1 = random_contraction(n, rng);
  const Matrix c = random_contraction(n, rng);
  const auto size = static_cast<Eigen::Index>(n);
  const Matrix root = psd_sqrt(Matrix::Identity(size, size) - q1);
  Matrix q2 = q1 + root * c * root;
  q2 = (q2 + q2.transpose()) / 2.0;
  return {std::move(q1), std::move(q2)};
}

}  // namespace sofic
