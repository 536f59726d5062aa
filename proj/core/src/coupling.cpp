#include "sofic/coupling.hpp"

#include "flow.hpp"
#include "sofic/error.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <map>
#include <unordered_map>

namespace sofic {

namespace {

constexpr double kMassTolerance = 1e-9;
constexpr std::size_t kMaxArcs = 4'000'000;
constexpr std::size_t kMaxTransportArcs = 4'000'000;
// mass differences at or below this are determinant round-off, not transport
constexpr double kTransportDust = 1e-15;

void require_same_ground(const SubsetDistribution& a, const SubsetDistribution& b, const char* what) {
  if (a.labels() != b.labels()) {
    throw InvalidArgument(std::string(what) + ": distributions live on different ground sets");
  }
}

}  // namespace

// -------------------------------------------------------------------- Coupling

Coupling::Coupling(std::vector<std::string> labels, std::vector<CouplingAtom> atoms)
    : labels_(std::move(labels)) {
  if (labels_.size() > kMaxGroundSize) throw CapacityExceeded("Coupling: ground set > 63");
  const Mask universe = full_mask(labels_.size());
  std::sort(atoms.begin(), atoms.end(), [](const auto& x, const auto& y) {
    return std::tie(x.first, x.second) < std::tie(y.first, y.second);
  });
  for (const auto& a : atoms) {
    if (!is_subset(a.first | a.second, universe)) {
      throw InvalidArgument("Coupling: mask outside ground set");
    }
    if (!atoms_.empty() && atoms_.back().first == a.first && atoms_.back().second == a.second) {
      atoms_.back().probability += a.probability;
    } else {
      atoms_.push_back(a);
    }
  }
  std::erase_if(atoms_, [](const auto& a) { return a.probability <= 0.0; });
  double total = 0.0;
  for (const auto& a : atoms_) {
    total += a.probability;
    cumulative_.push_back(total);
  }
  if (std::abs(total - 1.0) > kMassTolerance) {
    throw InvalidArgument("Coupling: total mass " + format_double(total) + " != 1");
  }
}

bool Coupling::is_monotone() const {
  return std::all_of(atoms_.begin(), atoms_.end(),
                     [](const auto& a) { return is_subset(a.first, a.second); });
}

SubsetDistribution Coupling::first_marginal() const {
  std::vector<std::pair<Mask, double>> atoms;
  for (const auto& a : atoms_) atoms.emplace_back(a.first, a.probability);
  return SubsetDistribution(labels_, std::move(atoms));
}

SubsetDistribution Coupling::second_marginal() const {
  std::vector<std::pair<Mask, double>> atoms;
  for (const auto& a : atoms_) atoms.emplace_back(a.second, a.probability);
  return SubsetDistribution(labels_, std::move(atoms));
}

double Coupling::disagreement() const {
  if (labels_.empty()) return 0.0;
  double sum = 0.0;
  for (const auto& a : atoms_) sum += a.probability * popcount(a.first ^ a.second);
  return sum / static_cast<double>(labels_.size());
}

std::size_t Coupling::sample_atom(Rng& rng) const {
  const double u = rng.uniform() * cumulative_.back();
  const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
  return std::min(static_cast<std::size_t>(it - cumulative_.begin()), atoms_.size() - 1);
}

std::string Coupling::to_json() const {
  nlohmann::json j;
  j["labels"] = labels_;
  j["monotone"] = is_monotone();
  auto atoms = nlohmann::json::array();
  for (const auto& a : atoms_) atoms.push_back({a.first, a.second, a.probability});
  j["atoms"] = std::move(atoms);
  return j.dump();
}

Coupling Coupling::from_json(const std::string& text) {
  try {
    const auto j = nlohmann::json::parse(text);
    for (const auto& [key, value] : j.items()) {
      if (key != "labels" && key != "monotone" && key != "atoms") {
        throw InvalidArgument("coupling JSON: unknown key '" + key + "'");
      }
    }
    std::vector<CouplingAtom> atoms;
    for (const auto& a : j.at("atoms")) {
      atoms.push_back({a.at(0).get<Mask>(), a.at(1).get<Mask>(), a.at(2).get<double>()});
    }
    Coupling c(j.at("labels").get<std::vector<std::string>>(), std::move(atoms));
    if (j.contains("monotone") && j["monotone"].get<bool>() && !c.is_monotone()) {
      throw InvalidArgument("coupling JSON: flagged monotone but an atom is not nested");
    }
    return c;
  } catch (const nlohmann::json::exception& ex) {
    throw InvalidArgument(std::string("coupling JSON: ") + ex.what());
  }
}

// ------------------------------------------------------------------ domination

double up_closure_mass(const SubsetDistribution& law, const std::vector<Mask>& generators) {
  double sum = 0.0;
  for (const auto& [mask, p] : law.atoms()) {
    const bool inside = std::any_of(generators.begin(), generators.end(),
                                    [mask](Mask g) { return is_subset(g, mask); });
    if (inside) sum += p;
  }
  return sum;
}

MonotoneCouplingResult monotone_coupling(const SubsetDistribution& lower,
                                         const SubsetDistribution& upper) {
  require_same_ground(lower, upper, "monotone_coupling");
  const auto& low = lower.atoms();
  const auto& up = upper.atoms();
  const std::size_t n = lower.ground_size();
  const Mask universe = full_mask(n);

  std::unordered_map<Mask, std::size_t> upper_index;
  for (std::size_t j = 0; j < up.size(); ++j) upper_index.emplace(up[j].first, j);

  // arcs A1 -> A2 for A1 subset of A2: enumerate supersets or scan the upper
  // support, whichever is cheaper
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < low.size(); ++i) {
    const Mask a = low[i].first;
    const Mask free = universe & ~a;
    const int free_bits = popcount(free);
    if (free_bits < 40 && (std::size_t{1} << free_bits) <= up.size()) {
      Mask extra = 0;
      for (;;) {
        const auto it = upper_index.find(a | extra);
        if (it != upper_index.end()) pairs.emplace_back(i, it->second);
        if (extra == free) break;
        extra = (extra - free) & free;
      }
    } else {
      for (std::size_t j = 0; j < up.size(); ++j) {
        if (is_subset(a, up[j].first)) pairs.emplace_back(i, j);
      }
    }
    if (pairs.size() > kMaxArcs) throw CapacityExceeded("monotone_coupling: more than 4e6 arcs");
  }

  const std::size_t source = 0;
  const std::size_t sink = 1;
  auto low_node = [](std::size_t i) { return 2 + i; };
  auto up_node = [&](std::size_t j) { return 2 + low.size() + j; };
  detail::MaxFlow network(2 + low.size() + up.size());
  for (std::size_t i = 0; i < low.size(); ++i) network.add_arc(source, low_node(i), low[i].second);
  for (std::size_t j = 0; j < up.size(); ++j) network.add_arc(up_node(j), sink, up[j].second);
  std::vector<std::size_t> middle;
  middle.reserve(pairs.size());
  for (auto [i, j] : pairs) middle.push_back(network.add_arc(low_node(i), up_node(j), 2.0));

  MonotoneCouplingResult result;
  result.flow_value = network.solve(source, sink);
  if (result.flow_value >= 1.0 - kMassTolerance) {
    std::vector<CouplingAtom> atoms;
    for (std::size_t k = 0; k < pairs.size(); ++k) {
      const double f = network.flow(middle[k]);
      if (f > 0.0) atoms.push_back({low[pairs[k].first].first, up[pairs[k].second].first, f});
    }
    // renormalize the round-off in the flow value
    double total = 0.0;
    for (const auto& a : atoms) total += a.probability;
    for (auto& a : atoms) a.probability /= total;
    result.coupling = Coupling(lower.labels(), std::move(atoms));
    return result;
  }

  // min cut: lower atoms reachable from the source generate the witness event
  const auto side = network.source_side(source);
  std::vector<Mask> reached;
  for (std::size_t i = 0; i < low.size(); ++i) {
    if (side[low_node(i)]) reached.push_back(low[i].first);
  }
  std::sort(reached.begin(), reached.end());
  IncreasingEvent event;
  for (Mask m : reached) {
    const bool covered = std::any_of(event.generators.begin(), event.generators.end(),
                                     [m](Mask g) { return is_subset(g, m); });
    if (covered) continue;
    std::erase_if(event.generators, [m](Mask g) { return is_subset(m, g); });
    event.generators.push_back(m);
  }
  std::sort(event.generators.begin(), event.generators.end());
  event.first_mass = up_closure_mass(lower, event.generators);
  event.second_mass = up_closure_mass(upper, event.generators);
  result.witness = std::move(event);
  return result;
}

// ------------------------------------------------------------------------ dbar

DbarResult dbar(const SubsetDistribution& a, const SubsetDistribution& b) {
  require_same_ground(a, b, "dbar");
  const std::size_t n = a.ground_size();
  if (n == 0) return {0.0, diagonal_coupling(a)};

  // common mass stays in place (optimal for a metric cost); the excess of a
  // is transported onto the excess of b
  std::vector<CouplingAtom> atoms;
  std::vector<std::pair<Mask, double>> surplus;
  std::vector<std::pair<Mask, double>> deficit;
  for (const auto& [mask, p] : a.atoms()) {
    const double q = b.probability(mask);
    if (std::min(p, q) > 0) atoms.push_back({mask, mask, std::min(p, q)});
    if (p - q > kTransportDust) surplus.emplace_back(mask, p - q);
  }
  for (const auto& [mask, q] : b.atoms()) {
    const double p = a.probability(mask);
    if (q - p > kTransportDust) deficit.emplace_back(mask, q - p);
  }

  if (surplus.size() * deficit.size() > kMaxTransportArcs) {
    throw CapacityExceeded("dbar: transport network exceeds 4e6 arcs");
  }
  double moved = 0.0;
  if (!surplus.empty() && !deficit.empty()) {
    const std::size_t source = 0;
    const std::size_t sink = 1;
    detail::MinCostFlow network(2 + surplus.size() + deficit.size());
    double supply = 0.0;
    double demand = 0.0;
    for (std::size_t i = 0; i < surplus.size(); ++i) {
      network.add_arc(source, 2 + i, surplus[i].second, 0.0);
      supply += surplus[i].second;
    }
    for (std::size_t j = 0; j < deficit.size(); ++j) {
      network.add_arc(2 + surplus.size() + j, sink, deficit[j].second, 0.0);
      demand += deficit[j].second;
    }
    std::vector<std::size_t> arcs;
    for (std::size_t i = 0; i < surplus.size(); ++i) {
      for (std::size_t j = 0; j < deficit.size(); ++j) {
        arcs.push_back(network.add_arc(2 + i, 2 + surplus.size() + j, 2.0,
                                       popcount(surplus[i].first ^ deficit[j].first)));
      }
    }
    network.solve(source, sink, std::min(supply, demand));
    std::size_t k = 0;
    for (std::size_t i = 0; i < surplus.size(); ++i) {
      for (std::size_t j = 0; j < deficit.size(); ++j, ++k) {
        const double f = network.flow(arcs[k]);
        if (f > 0) {
          atoms.push_back({surplus[i].first, deficit[j].first, f});
          moved += f * popcount(surplus[i].first ^ deficit[j].first);
        }
      }
    }
  }
  DbarResult result{moved / static_cast<double>(n), Coupling(a.labels(), std::move(atoms))};
  return result;
}

double dbar_monotone(const SubsetDistribution& lower, const SubsetDistribution& upper) {
  const auto check = monotone_coupling(lower, upper);
  if (!check.dominated()) {
    throw InvalidState("dbar_monotone: the first law is not dominated by the second");
  }
  const auto p1 = lower.marginals();
  const auto p2 = upper.marginals();
  double sum = 0.0;
  for (std::size_t e = 0; e < p1.size(); ++e) sum += p2[e] - p1[e];
  return p1.empty() ? 0.0 : sum / static_cast<double>(p1.size());
}

// ----------------------------------------------------------- joinings/products

Coupling relative_product(const Coupling& first, const Coupling& second) {
  if (first.labels() != second.labels()) {
    throw InvalidArgument("relative_product: couplings live on different ground sets");
  }
  const auto middle_a = first.second_marginal();
  const auto middle_b = second.first_marginal();
  if (middle_a.max_difference(middle_b) > kMassTolerance) {
    throw InvalidArgument("relative_product: middle marginals differ");
  }
  std::map<Mask, std::vector<std::pair<Mask, double>>> left;
  std::map<Mask, std::vector<std::pair<Mask, double>>> right;
  for (const auto& a : first.atoms()) left[a.second].emplace_back(a.first, a.probability);
  for (const auto& a : second.atoms()) right[a.first].emplace_back(a.second, a.probability);

  std::vector<CouplingAtom> atoms;
  for (const auto& [mid, outer] : left) {
    const auto it = right.find(mid);
    if (it == right.end()) continue;
    double right_mass = 0.0;
    for (const auto& r : it->second) right_mass += r.second;
    for (const auto& [x1, p] : outer) {
      for (const auto& [x3, q] : it->second) atoms.push_back({x1, x3, p * q / right_mass});
    }
  }
  return Coupling(first.labels(), std::move(atoms));
}

Coupling independent_coupling(const SubsetDistribution& a, const SubsetDistribution& b) {
  require_same_ground(a, b, "independent_coupling");
  std::vector<CouplingAtom> atoms;
  for (const auto& [x, p] : a.atoms()) {
    for (const auto& [y, q] : b.atoms()) atoms.push_back({x, y, p * q});
  }
  return Coupling(a.labels(), std::move(atoms));
}

Coupling diagonal_coupling(const SubsetDistribution& law) {
  std::vector<CouplingAtom> atoms;
  for (const auto& [x, p] : law.atoms()) atoms.push_back({x, x, p});
  return Coupling(law.labels(), std::move(atoms));
}

}  // namespace sofic
