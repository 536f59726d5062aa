#pragma once

#include <cstddef>
#include <vector>

namespace sofic::detail {

/// Dinic max-flow on real capacities. Residual capacities at or below
/// `epsilon` are treated as saturated.
class MaxFlow {
 public:
  explicit MaxFlow(std::size_t nodes, double epsilon = 1e-15);

  /// Returns the arc id (the reverse arc is id ^ 1).
  std::size_t add_arc(std::size_t from, std::size_t to, double capacity);
  double solve(std::size_t source, std::size_t sink);

  [[nodiscard]] double flow(std::size_t arc) const { return arcs_[arc ^ 1].residual; }
  /// Nodes reachable from the source in the final residual network.
  [[nodiscard]] std::vector<char> source_side(std::size_t source) const;

 private:
  struct Arc {
    std::size_t to;
    double residual;
  };
  bool build_levels(std::size_t source, std::size_t sink);
  double push(std::size_t node, std::size_t sink, double limit);

  double epsilon_;
  std::vector<Arc> arcs_;
  std::vector<std::vector<std::size_t>> out_;
  std::vector<int> level_;
  std::vector<std::size_t> cursor_;
};

/// Successive shortest paths min-cost flow with Dijkstra on reduced costs.
/// Costs must be nonnegative.
class MinCostFlow {
 public:
  explicit MinCostFlow(std::size_t nodes, double epsilon = 1e-15);

  std::size_t add_arc(std::size_t from, std::size_t to, double capacity, double cost);
  /// Sends up to `amount` from source to sink; returns (flow, cost).
  std::pair<double, double> solve(std::size_t source, std::size_t sink, double amount);

  [[nodiscard]] double flow(std::size_t arc) const { return arcs_[arc ^ 1].residual; }

 private:
  struct Arc {
    std::size_t to;
    double residual;
    double cost;
  };
  double epsilon_;
  std::vector<Arc> arcs_;
  std::vector<std::vector<std::size_t>> out_;
};

}  // namespace sofic::detail
