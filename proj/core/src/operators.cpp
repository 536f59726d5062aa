#include "sofic/operators.hpp"

#include "sofic/error.hpp"

#include <algorithm>
#include <cmath>

namespace sofic {

OperatorMatrix::OperatorMatrix(std::vector<std::string> ground_labels, Matrix m)
    : labels(std::move(ground_labels)), entries(std::move(m)) {
  if (entries.rows() != entries.cols()) throw InvalidArgument("OperatorMatrix: not square");
  if (labels.size() != static_cast<std::size_t>(entries.rows())) {
    throw InvalidArgument("OperatorMatrix: label count differs from dimension");
  }
}

OperatorMatrix::OperatorMatrix(Matrix m) : entries(std::move(m)) {
  if (entries.rows() != entries.cols()) throw InvalidArgument("OperatorMatrix: not square");
  for (Eigen::Index i = 0; i < entries.rows(); ++i) labels.push_back(std::to_string(i));
}

bool OperatorMatrix::is_symmetric(double tol) const { return asymmetry(entries) <= tol; }

OperatorMatrix represent(const GroupRingElement& a, const SchreierGraph& graph) {
  const auto n = static_cast<Eigen::Index>(graph.vertex_count());
  Matrix m = Matrix::Zero(n, n);
  for (const auto& [word, c] : a.terms()) {
    // pi(w) delta_v = delta_{v.w^{-1}}
    const auto inverse = graph.generators().resolve_word(inverse_word(word));
    for (VertexId v = 0; v < graph.vertex_count(); ++v) {
      m(graph.act(v, inverse), v) += c;
    }
  }
  return OperatorMatrix(std::move(m));
}

double normalized_trace(const Matrix& m) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw InvalidArgument("normalized_trace: need a non-empty square matrix");
  }
  return m.trace() / static_cast<double>(m.rows());
}

double SpectralMeasure::moment(int k) const {
  double sum = 0.0;
  for (const auto& [x, w] : atoms) sum += w * std::pow(x, k);
  return sum;
}

double SpectralMeasure::cdf(double x) const {
  double sum = 0.0;
  for (const auto& [y, w] : atoms) {
    if (y <= x) sum += w;
  }
  return sum;
}

double SpectralMeasure::mass_at(double x, double tol) const {
  double sum = 0.0;
  for (const auto& [y, w] : atoms) {
    if (std::abs(y - x) <= tol) sum += w;
  }
  return sum;
}

SpectralMeasure spectral_measure(const Matrix& m, double merge_tol) {
  require_symmetric(m, 1e-12, "spectral_measure");
  if (m.rows() == 0) throw InvalidArgument("spectral_measure: empty matrix");
  const Vector values = symmetric_eigenvalues(m);
  const double scale = std::max(1.0, values.cwiseAbs().maxCoeff());
  const double weight = 1.0 / static_cast<double>(values.size());
  SpectralMeasure mu;
  Eigen::Index i = 0;
  while (i < values.size()) {
    Eigen::Index j = i + 1;
    double sum = values[i];
    while (j < values.size() && values[j] - values[j - 1] <= merge_tol * scale) sum += values[j++];
    mu.atoms.emplace_back(sum / static_cast<double>(j - i), weight * static_cast<double>(j - i));
    i = j;
  }
  return mu;
}

double cdf_sup_distance(const SpectralMeasure& a, const SpectralMeasure& b) {
  double sup = 0.0;
  for (const auto* mu : {&a, &b}) {
    for (const auto& [x, w] : mu->atoms) sup = std::max(sup, std::abs(a.cdf(x) - b.cdf(x)));
  }
  return sup;
}

double kernel_fraction(const Matrix& m, double tol) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw InvalidArgument("kernel_fraction: need a non-empty square matrix");
  }
  const Vector s = singular_values(m);
  const double cutoff = tol * std::max(1.0, s.size() ? s[0] : 0.0);
  const auto zero = std::count_if(s.data(), s.data() + s.size(), [&](double x) { return x < cutoff; });
  return static_cast<double>(zero) / static_cast<double>(m.rows());
}

double kernel_fraction(const GroupRingElement& a, const SchreierGraph& graph, double tol) {
  if (!a.has_integer_coefficients()) {
    throw InvalidArgument("kernel_fraction: coefficients must be integers");
  }
  return kernel_fraction(represent(a, graph).entries, tol);
}

double schatten_norm(const Matrix& m, SchattenP p) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw InvalidArgument("schatten_norm: need a non-empty square matrix");
  }
  const Vector s = singular_values(m);
  const auto n = static_cast<double>(s.size());
  switch (p) {
    case SchattenP::One:
      return s.sum() / n;
    case SchattenP::Two:
      return std::sqrt(s.squaredNorm() / n);
    case SchattenP::Infinity:
      return s.maxCoeff();
  }
  return 0.0;
}

Matrix heat_kernel(const Matrix& laplacian, double t) {
  if (t < 0) throw InvalidArgument("heat_kernel: t must be nonnegative");
  require_symmetric(laplacian, 1e-12, "heat_kernel");
  const auto eig = symmetric_eigen(laplacian);
  const Vector decay = (-t * eig.values.array()).exp();
  return eig.vectors * decay.asDiagonal() * eig.vectors.transpose();
}

double heat_trace(const Vector& laplacian_eigenvalues, double t) {
  if (t < 0) throw InvalidArgument("heat_trace: t must be nonnegative");
  if (laplacian_eigenvalues.size() == 0) throw InvalidArgument("heat_trace: empty spectrum");
  return (-t * laplacian_eigenvalues.array()).exp().mean();
}

Matrix graph_laplacian(const Multigraph& graph) {
  std::vector<std::size_t> all(graph.edges.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  return graph_laplacian(graph, all);
}

Matrix graph_laplacian(const Multigraph& graph, std::span<const std::size_t> edges) {
  const auto n = static_cast<Eigen::Index>(graph.vertex_count);
  Matrix lap = Matrix::Zero(n, n);
  for (std::size_t id : edges) {
    const auto& e = graph.edges.at(id);
    if (e.is_loop()) continue;
    lap(e.tail, e.tail) += 1.0;
    lap(e.head, e.head) += 1.0;
    lap(e.tail, e.head) -= 1.0;
    lap(e.head, e.tail) -= 1.0;
  }
  return lap;
}

ContractionCheck validate_contraction(const Matrix& m, double tol) {
  require_symmetric(m, 1e-12, "validate_contraction");
  ContractionCheck check;
  if (m.rows() == 0) return check;
  const auto eig = symmetric_eigen(m);
  const double lo = eig.values.minCoeff();
  const double hi = eig.values.maxCoeff();
  check.max_violation = std::max({0.0, -lo, hi - 1.0});
  check.valid = lo >= -tol && hi <= 1.0 + tol;
  if (check.valid) {
    check.clamped = m;
  } else {
    const Vector clipped = eig.values.cwiseMax(0.0).cwiseMin(1.0);
    check.clamped = eig.vectors * clipped.asDiagonal() * eig.vectors.transpose();
  }
  return check;
}

}  // namespace sofic
