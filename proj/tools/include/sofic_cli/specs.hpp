#pragma once

#include "sofic/dpp.hpp"
#include "sofic/graph.hpp"
#include "sofic/rng.hpp"
#include "sofic/schreier.hpp"
#include "sofic/subset.hpp"

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace sofic::cli {

/// Malformed command-line input; maps to exit code 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// "a..b" (inclusive), "a,b,c" or a single integer.
std::vector<std::size_t> parse_size_list(const std::string& text);
/// Comma separated reals.
std::vector<double> parse_real_list(const std::string& text);
/// "D1xD2x...".
std::vector<std::size_t> parse_dim_list(const std::string& text);
/// "RxC" or "N" (square).
std::pair<std::size_t, std::size_t> parse_dims(const std::string& text);

/// cycle:N | path:N | complete:N | grid:RxC | torus:RxC | file:PATH (graph JSON)
Multigraph parse_graph(const std::string& spec);

/// torus:D1xD2x... | random:K:N | file:PATH (Schreier JSON)
SchreierGraph parse_schreier(const std::string& spec, Rng& rng);

/// Kernel together with its ground labels and, for edge kernels, the graph.
struct KernelSpec {
  Matrix kernel;
  std::vector<std::string> labels;
};

/// tc:GRAPH | fsf:L:GRAPH | diag:p1,p2,... | random:N | circulant:N:c0,c1,...
/// | constants:N | file:PATH (CSV rows of the matrix)
KernelSpec parse_kernel(const std::string& spec, Rng& rng);

/// dpp:KERNEL | bernoulli:N:p | csv:N:PATH (mask,probability rows)
SubsetDistribution parse_distribution(const std::string& spec, Rng& rng);

std::string read_file(const std::string& path);

}  // namespace sofic::cli
