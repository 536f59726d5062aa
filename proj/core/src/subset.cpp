#include "sofic/subset.hpp"

#include "sofic/error.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

namespace sofic {

Mask mask_of(std::span<const std::size_t> elements) {
  Mask m = 0;
  for (auto e : elements) {
    if (e >= kMaxGroundSize) throw InvalidArgument("mask_of: element index too large");
    m |= Mask{1} << e;
  }
  return m;
}

std::vector<std::size_t> elements_of(Mask m) {
  std::vector<std::size_t> out;
  while (m) {
    out.push_back(static_cast<std::size_t>(std::countr_zero(m)));
    m &= m - 1;
  }
  return out;
}

std::vector<int> int_elements_of(Mask m) {
  std::vector<int> out;
  while (m) {
    out.push_back(std::countr_zero(m));
    m &= m - 1;
  }
  return out;
}

std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

SubsetDistribution::SubsetDistribution(std::vector<std::string> labels,
                                       std::vector<std::pair<Mask, double>> atoms)
    : labels_(std::move(labels)) {
  if (labels_.size() > kMaxGroundSize) throw CapacityExceeded("SubsetDistribution: ground set > 63");
  const Mask universe = full_mask(labels_.size());
  std::sort(atoms.begin(), atoms.end());
  for (const auto& [mask, p] : atoms) {
    if (!is_subset(mask, universe)) throw InvalidArgument("SubsetDistribution: mask outside ground set");
    if (!std::isfinite(p)) throw InvalidArgument("SubsetDistribution: non-finite probability");
    if (!atoms_.empty() && atoms_.back().first == mask) {
      atoms_.back().second += p;
    } else {
      atoms_.emplace_back(mask, p);
    }
  }
  std::erase_if(atoms_, [this](const auto& a) {
    if (a.second < 0) max_clamp_ = std::max(max_clamp_, -a.second);
    return a.second <= 0;
  });
  if (max_clamp_ > kClampFailure) {
    throw InvalidState("SubsetDistribution: negative probability " + format_double(-max_clamp_));
  }
  if (std::abs(total() - 1.0) > kSumTolerance) {
    throw InvalidArgument("SubsetDistribution: total mass " + format_double(total()) + " != 1");
  }
}

SubsetDistribution SubsetDistribution::point_mass(std::vector<std::string> labels, Mask mask) {
  return SubsetDistribution(std::move(labels), {{mask, 1.0}});
}

std::vector<std::string> SubsetDistribution::default_labels(std::size_t n) {
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) labels.push_back(std::to_string(i));
  return labels;
}

double SubsetDistribution::total() const {
  double sum = 0.0;
  for (const auto& a : atoms_) sum += a.second;
  return sum;
}

double SubsetDistribution::probability(Mask m) const {
  const auto it = std::lower_bound(atoms_.begin(), atoms_.end(), m,
                                   [](const auto& a, Mask key) { return a.first < key; });
  return (it != atoms_.end() && it->first == m) ? it->second : 0.0;
}

double SubsetDistribution::inclusion_probability(Mask a) const {
  double sum = 0.0;
  for (const auto& [mask, p] : atoms_) {
    if (is_subset(a, mask)) sum += p;
  }
  return sum;
}

std::vector<double> SubsetDistribution::marginals() const {
  std::vector<double> out(labels_.size(), 0.0);
  for (const auto& [mask, p] : atoms_) {
    for (auto e : elements_of(mask)) out[e] += p;
  }
  return out;
}

SubsetDistribution SubsetDistribution::complement() const {
  const Mask universe = full_mask(labels_.size());
  std::vector<std::pair<Mask, double>> atoms;
  atoms.reserve(atoms_.size());
  for (const auto& [mask, p] : atoms_) atoms.emplace_back(universe & ~mask, p);
  return SubsetDistribution(labels_, std::move(atoms));
}

SubsetDistribution SubsetDistribution::restrict_to(std::span<const std::size_t> window) const {
  std::vector<std::string> labels;
  for (auto e : window) labels.push_back(labels_.at(e));
  std::vector<std::pair<Mask, double>> atoms;
  for (const auto& [mask, p] : atoms_) {
    Mask sub = 0;
    for (std::size_t i = 0; i < window.size(); ++i) {
      if (mask >> window[i] & 1) sub |= Mask{1} << i;
    }
    atoms.emplace_back(sub, p);
  }
  return SubsetDistribution(std::move(labels), std::move(atoms));
}

double SubsetDistribution::max_difference(const SubsetDistribution& other) const {
  double diff = 0.0;
  for (const auto& [mask, p] : atoms_) diff = std::max(diff, std::abs(p - other.probability(mask)));
  for (const auto& [mask, p] : other.atoms_) diff = std::max(diff, std::abs(p - probability(mask)));
  return diff;
}

std::string SubsetDistribution::to_csv() const {
  std::string out = "mask,probability\n";
  for (const auto& [mask, p] : atoms_) {
    out += std::to_string(mask);
    out += ',';
    out += format_double(p);
    out += '\n';
  }
  return out;
}

SubsetDistribution SubsetDistribution::from_csv(const std::string& text,
                                                std::vector<std::string> labels) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != "mask,probability") {
    throw InvalidArgument("subset CSV: missing header 'mask,probability'");
  }
  std::vector<std::pair<Mask, double>> atoms;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw InvalidArgument("subset CSV: malformed row");
    try {
      atoms.emplace_back(std::stoull(line.substr(0, comma)), std::stod(line.substr(comma + 1)));
    } catch (const std::exception&) {
      throw InvalidArgument("subset CSV: malformed row '" + line + "'");
    }
  }
  return SubsetDistribution(std::move(labels), std::move(atoms));
}

}  // namespace sofic
