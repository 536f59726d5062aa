#include "sofic_cli/specs.hpp"

#include "sofic/dependence.hpp"
#include "sofic/forests.hpp"
#include "sofic/random_matrix.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace sofic::cli {

namespace {

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string current;
  for (char c : text) {
    if (c == sep) {
      parts.push_back(current);
      current.clear();
    } else {
      current += c;
    }
  }
  parts.push_back(current);
  return parts;
}

std::size_t parse_size(const std::string& text) {
  std::size_t value = 0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (text.empty() || ec != std::errc() || ptr != end) {
    throw UsageError("expected a nonnegative integer, got '" + text + "'");
  }
  return value;
}

double parse_real(const std::string& text) {
  double value = 0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (text.empty() || ec != std::errc() || ptr != end) {
    throw UsageError("expected a real number, got '" + text + "'");
  }
  return value;
}

// splits "kind:rest" at the first colon
std::pair<std::string, std::string> head_tail(const std::string& spec) {
  const auto colon = spec.find(':');
  if (colon == std::string::npos) throw UsageError("malformed spec '" + spec + "' (expected kind:args)");
  return {spec.substr(0, colon), spec.substr(colon + 1)};
}

}  // namespace

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::vector<std::size_t> parse_size_list(const std::string& text) {
  std::vector<std::size_t> values;
  const auto dots = text.find("..");
  if (dots != std::string::npos) {
    const auto lo = parse_size(text.substr(0, dots));
    const auto hi = parse_size(text.substr(dots + 2));
    if (lo > hi) throw UsageError("empty range '" + text + "'");
    for (auto v = lo; v <= hi; ++v) values.push_back(v);
    return values;
  }
  for (const auto& part : split(text, ',')) values.push_back(parse_size(part));
  return values;
}

std::vector<double> parse_real_list(const std::string& text) {
  std::vector<double> values;
  for (const auto& part : split(text, ',')) values.push_back(parse_real(part));
  return values;
}

std::vector<std::size_t> parse_dim_list(const std::string& text) {
  std::vector<std::size_t> dims;
  for (const auto& part : split(text, 'x')) dims.push_back(parse_size(part));
  return dims;
}

std::pair<std::size_t, std::size_t> parse_dims(const std::string& text) {
  const auto parts = split(text, 'x');
  if (parts.size() == 1) {
    const auto n = parse_size(parts[0]);
    return {n, n};
  }
  if (parts.size() != 2) throw UsageError("expected RxC, got '" + text + "'");
  return {parse_size(parts[0]), parse_size(parts[1])};
}

Multigraph parse_graph(const std::string& spec) {
  const auto [kind, args] = head_tail(spec);
  if (kind == "cycle") return cycle_graph(parse_size(args));
  if (kind == "path") return path_graph(parse_size(args));
  if (kind == "complete") return complete_graph(parse_size(args));
  if (kind == "grid") {
    const auto [r, c] = parse_dims(args);
    return grid_graph(r, c);
  }
  if (kind == "torus") {
    const auto [r, c] = parse_dims(args);
    return torus_graph(r, c);
  }
  if (kind == "file") return multigraph_from_json(read_file(args));
  throw UsageError("unknown graph kind '" + kind + "'");
}

SchreierGraph parse_schreier(const std::string& spec, Rng& rng) {
  const auto [kind, args] = head_tail(spec);
  if (kind == "torus") {
    return build_torus(parse_dim_list(args));
  }
  if (kind == "random") {
    const auto parts = split(args, ':');
    if (parts.size() != 2) throw UsageError("expected random:K:N, got '" + spec + "'");
    return random_schreier(parse_size(parts[0]), parse_size(parts[1]), rng);
  }
  if (kind == "file") return schreier_from_json(read_file(args));
  throw UsageError("unknown Schreier graph kind '" + kind + "'");
}

KernelSpec parse_kernel(const std::string& spec, Rng& rng) {
  const auto [kind, args] = head_tail(spec);
  if (kind == "tc") {
    const auto graph = parse_graph(args);
    return {transfer_current(graph), edge_space(graph).labels()};
  }
  if (kind == "fsf") {
    const auto [length, graph_spec] = head_tail(args);
    const auto graph = parse_graph(graph_spec);
    const auto measure = fsf_kernel(graph, parse_size(length));
    return {measure.kernel(), measure.labels()};
  }
  if (kind == "diag") {
    const auto p = parse_real_list(args);
    Matrix m = Matrix::Zero(static_cast<Eigen::Index>(p.size()), static_cast<Eigen::Index>(p.size()));
    for (std::size_t i = 0; i < p.size(); ++i) m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = p[i];
    return {m, SubsetDistribution::default_labels(p.size())};
  }
  if (kind == "random") {
    const auto n = parse_size(args);
    return {random_contraction(n, rng), SubsetDistribution::default_labels(n)};
  }
  if (kind == "circulant") {
    const auto [n_text, coefficients] = head_tail(args);
    const auto n = parse_size(n_text);
    const auto c = parse_real_list(coefficients);
    return {circulant_kernel(n, c), SubsetDistribution::default_labels(n)};
  }
  if (kind == "constants") {
    const auto n = parse_size(args);
    if (n == 0) throw UsageError("constants:N needs N >= 1");
    const auto size = static_cast<Eigen::Index>(n);
    return {Matrix::Constant(size, size, 1.0 / static_cast<double>(n)),
            SubsetDistribution::default_labels(n)};
  }
  if (kind == "file") {
    std::vector<std::vector<double>> rows;
    std::istringstream in(read_file(args));
    std::string line;
    while (std::getline(in, line)) {
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.empty()) continue;
      rows.push_back(parse_real_list(line));
    }
    const auto n = rows.size();
    Matrix m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; ++i) {
      if (rows[i].size() != n) throw UsageError("kernel file is not a square matrix");
      for (std::size_t j = 0; j < n; ++j) {
        m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
      }
    }
    return {m, SubsetDistribution::default_labels(n)};
  }
  throw UsageError("unknown kernel kind '" + kind + "'");
}

SubsetDistribution parse_distribution(const std::string& spec, Rng& rng) {
  const auto [kind, args] = head_tail(spec);
  if (kind == "dpp") {
    auto k = parse_kernel(args, rng);
    return exact_distribution(DeterminantalMeasure(std::move(k.kernel), std::move(k.labels)));
  }
  if (kind == "bernoulli") {
    const auto [n_text, p_text] = head_tail(args);
    const auto n = parse_size(n_text);
    const double p = parse_real(p_text);
    Matrix m = p * Matrix::Identity(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    return exact_distribution(DeterminantalMeasure(std::move(m)));
  }
  if (kind == "csv") {
    const auto [n_text, path] = head_tail(args);
    return SubsetDistribution::from_csv(read_file(path),
                                        SubsetDistribution::default_labels(parse_size(n_text)));
  }
  throw UsageError("unknown distribution kind '" + kind + "'");
}

}  // namespace sofic::cli
