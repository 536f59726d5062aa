#include "flow.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <limits>
#include <queue>

namespace sofic::detail {

MaxFlow::MaxFlow(std::size_t nodes, double epsilon)
    : epsilon_(epsilon), out_(nodes), level_(nodes), cursor_(nodes) {}

std::size_t MaxFlow::add_arc(std::size_t from, std::size_t to, double capacity) {
  const std::size_t id = arcs_.size();
  arcs_.push_back({to, capacity});
  arcs_.push_back({from, 0.0});
  out_[from].push_back(id);
  out_[to].push_back(id + 1);
  return id;
}

bool MaxFlow::build_levels(std::size_t source, std::size_t sink) {
  std::fill(level_.begin(), level_.end(), -1);
  std::deque<std::size_t> queue{source};
  level_[source] = 0;
  while (!queue.empty()) {
    const auto u = queue.front();
    queue.pop_front();
    for (auto id : out_[u]) {
      const auto& arc = arcs_[id];
      if (arc.residual > epsilon_ && level_[arc.to] < 0) {
        level_[arc.to] = level_[u] + 1;
        queue.push_back(arc.to);
      }
    }
  }
  return level_[sink] >= 0;
}

double MaxFlow::push(std::size_t node, std::size_t sink, double limit) {
  if (node == sink) return limit;
  for (auto& i = cursor_[node]; i < out_[node].size(); ++i) {
    const auto id = out_[node][i];
    auto& arc = arcs_[id];
    if (arc.residual <= epsilon_ || level_[arc.to] != level_[node] + 1) continue;
    const double pushed = push(arc.to, sink, std::min(limit, arc.residual));
    if (pushed > 0.0) {
      arc.residual -= pushed;
      arcs_[id ^ 1].residual += pushed;
      return pushed;
    }
  }
  return 0.0;
}

double MaxFlow::solve(std::size_t source, std::size_t sink) {
  double total = 0.0;
  while (build_levels(source, sink)) {
    std::fill(cursor_.begin(), cursor_.end(), 0);
    for (;;) {
      const double pushed = push(source, sink, std::numeric_limits<double>::infinity());
      if (pushed <= 0.0) break;
      total += pushed;
    }
  }
  return total;
}

std::vector<char> MaxFlow::source_side(std::size_t source) const {
  std::vector<char> seen(out_.size(), 0);
  std::deque<std::size_t> queue{source};
  seen[source] = 1;
  while (!queue.empty()) {
    const auto u = queue.front();
    queue.pop_front();
    for (auto id : out_[u]) {
      const auto& arc = arcs_[id];
      if (arc.residual > epsilon_ && !seen[arc.to]) {
        seen[arc.to] = 1;
        queue.push_back(arc.to);
      }
    }
  }
  return seen;
}

MinCostFlow::MinCostFlow(std::size_t nodes, double epsilon) : epsilon_(epsilon), out_(nodes) {}

std::size_t MinCostFlow::add_arc(std::size_t from, std::size_t to, double capacity, double cost) {
  const std::size_t id = arcs_.size();
  arcs_.push_back({to, capacity, cost});
  arcs_.push_back({from, 0.0, -cost});
  out_[from].push_back(id);
  out_[to].push_back(id + 1);
  return id;
}

std::pair<double, double> MinCostFlow::solve(std::size_t source, std::size_t sink, double amount) {
  const std::size_t n = out_.size();
  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::vector<double> potential(n, 0.0);
  std::vector<double> dist(n);
  std::vector<std::size_t> via(n);
  double sent = 0.0;
  double cost = 0.0;
  using Item = std::pair<double, std::size_t>;
  while (amount - sent > epsilon_) {
    std::fill(dist.begin(), dist.end(), kInf);
    dist[source] = 0.0;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    heap.emplace(0.0, source);
    while (!heap.empty()) {
      const auto [d, u] = heap.top();
      heap.pop();
      if (d > dist[u]) continue;
      for (auto id : out_[u]) {
        const auto& arc = arcs_[id];
        if (arc.residual <= epsilon_) continue;
        // reduced costs are >= 0 up to round-off
        const double nd = d + std::max(0.0, arc.cost + potential[u] - potential[arc.to]);
        if (nd < dist[arc.to]) {
          dist[arc.to] = nd;
          via[arc.to] = id;
          heap.emplace(nd, arc.to);
        }
      }
    }
    if (dist[sink] == kInf) break;
    for (std::size_t v = 0; v < n; ++v) {
      if (dist[v] < kInf) potential[v] += dist[v];
    }
    double bottleneck = amount - sent;
    for (auto v = sink; v != source; v = arcs_[via[v] ^ 1].to) {
      bottleneck = std::min(bottleneck, arcs_[via[v]].residual);
    }
    for (auto v = sink; v != source; v = arcs_[via[v] ^ 1].to) {
      arcs_[via[v]].residual -= bottleneck;
      arcs_[via[v] ^ 1].residual += bottleneck;
      cost += bottleneck * arcs_[via[v]].cost;
    }
    sent += bottleneck;
  }
  return {sent, cost};
}

}  // namespace sofic::detail
