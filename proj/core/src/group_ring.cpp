#include "sofic/group_ring.hpp"

#include "sofic/error.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <sstream>
#include <vector>

namespace sofic {

namespace {

bool is_inverse_pair(char a, char b) {
  return a != b && std::tolower(static_cast<unsigned char>(a)) ==
                       std::tolower(static_cast<unsigned char>(b));
}

char invert_letter(char c) {
  const auto u = static_cast<unsigned char>(c);
  return std::islower(u) ? static_cast<char>(std::toupper(u)) : static_cast<char>(std::tolower(u));
}

/// Recursive-descent parser over the text of a group ring element.
class Parser {
 public:
  explicit Parser(const std::string& text) : text_(text) {}

  GroupRingElement parse() {
    auto result = expression();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected character");
    return result;
  }

 private:
  GroupRingElement expression() {
    skip_space();
    double sign = 1.0;
    if (peek() == '+' || peek() == '-') {
      sign = next() == '-' ? -1.0 : 1.0;
    }
    GroupRingElement result = term();
    result *= sign;
    for (;;) {
      skip_space();
      const char c = peek();
      if (c != '+' && c != '-') break;
      next();
      GroupRingElement rhs = term();
      if (c == '+') {
        result += rhs;
      } else {
        result -= rhs;
      }
    }
    return result;
  }

  GroupRingElement term() {
    GroupRingElement result = factor();
    for (;;) {
      skip_space();
      const char c = peek();
      if (c == '*') {
        next();
        result = result * factor();
      } else if (c == '(' || std::isalnum(static_cast<unsigned char>(c)) || c == '.') {
        result = result * factor();
      } else {
        break;
      }
    }
    return result;
  }

  GroupRingElement factor() {
    skip_space();
    const char c = peek();
    if (c == '(') {
      next();
      auto inner = expression();
      skip_space();
      if (next() != ')') fail("expected ')'");
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      const char* begin = text_.c_str() + pos_;
      char* end = nullptr;
      const double value = std::strtod(begin, &end);
      if (end == begin) fail("bad number");
      pos_ += static_cast<std::size_t>(end - begin);
      return GroupRingElement(value, "");
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::string word;
      while (std::isalpha(static_cast<unsigned char>(peek()))) word += next();
      return GroupRingElement(1.0, word);
    }
    fail("expected a number, word or '('");
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  [[nodiscard]] char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
  char next() { return pos_ < text_.size() ? text_[pos_++] : '\0'; }
  [[noreturn]] void fail(const std::string& why) const {
    throw InvalidArgument("group ring element '" + text_ + "': " + why + " at position " +
                          std::to_string(pos_));
  }

  const std::string& text_;
  std::size_t pos_ = 0;
};

}  // namespace

GroupWord reduce_word(const GroupWord& word) {
  std::string out;
  for (char c : word) {
    if (!std::isalpha(static_cast<unsigned char>(c))) {
      throw InvalidArgument(std::string("word letter must be alphabetic: '") + c + "'");
    }
    if (!out.empty() && is_inverse_pair(out.back(), c)) {
      out.pop_back();
    } else {
      out.push_back(c);
    }
  }
  return out;
}

GroupWord inverse_word(const GroupWord& word) {
  GroupWord out(word.rbegin(), word.rend());
  for (char& c : out) c = invert_letter(c);
  return out;
}

GroupRingElement::GroupRingElement(double coefficient, const GroupWord& word) {
  add_term(coefficient, word);
}

void GroupRingElement::add_term(double coefficient, const GroupWord& word) {
  if (coefficient == 0.0) return;
  const auto reduced = reduce_word(word);
  const double value = (terms_[reduced] += coefficient);
  if (value == 0.0) terms_.erase(reduced);
}

GroupRingElement GroupRingElement::parse(const std::string& text) { return Parser(text).parse(); }

bool GroupRingElement::has_integer_coefficients() const {
  return std::all_of(terms_.begin(), terms_.end(),
                     [](const auto& t) { return std::nearbyint(t.second) == t.second; });
}

double GroupRingElement::coefficient(const GroupWord& word) const {
  const auto it = terms_.find(reduce_word(word));
  return it == terms_.end() ? 0.0 : it->second;
}

std::size_t GroupRingElement::max_word_length() const {
  std::size_t len = 0;
  for (const auto& [word, c] : terms_) len = std::max(len, word.size());
  return len;
}

GroupRingElement GroupRingElement::adjoint() const {
  GroupRingElement out;
  for (const auto& [word, c] : terms_) out.add_term(c, inverse_word(word));
  return out;
}

std::string GroupRingElement::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  os.precision(17);
  bool first = true;
  for (const auto& [word, c] : terms_) {
    double mag = c;
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    mag = std::abs(c);
    if (word.empty()) {
      os << mag;
    } else if (mag == 1.0) {
      os << word;
    } else {
      os << mag << "*" << word;
    }
    first = false;
  }
  return os.str();
}

GroupRingElement& GroupRingElement::operator+=(const GroupRingElement& other) {
  for (const auto& [word, c] : other.terms_) add_term(c, word);
  return *this;
}

GroupRingElement& GroupRingElement::operator-=(const GroupRingElement& other) {
  for (const auto& [word, c] : other.terms_) add_term(-c, word);
  return *this;
}

GroupRingElement& GroupRingElement::operator*=(double scalar) {
  if (scalar == 0.0) {
    terms_.clear();
    return *this;
  }
  for (auto& [word, c] : terms_) c *= scalar;
  return *this;
}

GroupRingElement operator*(const GroupRingElement& a, const GroupRingElement& b) {
  GroupRingElement out;
  for (const auto& [wa, ca] : a.terms_) {
    for (const auto& [wb, cb] : b.terms_) out.add_term(ca * cb, wa + wb);
  }
  return out;
}

LimitGroup LimitGroup::parse(const std::string& name) {
  if (name.empty()) throw InvalidArgument("empty group name");
  const char kind = name[0];
  std::size_t rank = 1;
  if (name.size() > 1) {
    const std::string digits = name.substr(name[1] == '^' ? 2 : 1);
    if (digits.empty() || !std::all_of(digits.begin(), digits.end(), ::isdigit)) {
      throw InvalidArgument("unsupported group '" + name + "'");
    }
    rank = std::stoul(digits);
  }
  if (rank == 0 || rank > 8) throw InvalidArgument("group rank must be in 1..8");
  if (kind == 'Z') return integers(rank);
  if (kind == 'F') return free(rank);
  throw InvalidArgument("unsupported group '" + name + "'");
}

std::string LimitGroup::name() const {
  if (kind == Kind::Free) return "F" + std::to_string(rank);
  return rank == 1 ? "Z" : "Z^" + std::to_string(rank);
}

bool is_identity_in(const GroupWord& word, const LimitGroup& group) {
  std::vector<long> exponent(group.rank, 0);
  for (char c : word) {
    const auto lower = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    const auto j = static_cast<std::size_t>(lower - 's');
    if (lower < 's' || j >= group.rank) {
      throw InvalidArgument(std::string("letter '") + c + "' is not a generator of " + group.name());
    }
    exponent[j] += (c == lower) ? 1 : -1;
  }
  if (group.kind == LimitGroup::Kind::Abelian) {
    return std::all_of(exponent.begin(), exponent.end(), [](long e) { return e == 0; });
  }
  return reduce_word(word).empty();
}

double limit_trace(const GroupRingElement& a, const LimitGroup& group) {
  double sum = 0.0;
  for (const auto& [word, c] : a.terms()) {
    if (is_identity_in(word, group)) sum += c;
  }
  return sum;
}

double fixed_point_fraction(const GroupWord& word, const SchreierGraph& graph) {
  const auto symbols = graph.generators().resolve_word(word);
  std::size_t fixed = 0;
  for (VertexId v = 0; v < graph.vertex_count(); ++v) {
    fixed += graph.act(v, symbols) == v ? 1 : 0;
  }
  return static_cast<double>(fixed) / static_cast<double>(graph.vertex_count());
}

double schreier_trace(const GroupRingElement& a, const SchreierGraph& graph) {
  double sum = 0.0;
  for (const auto& [word, c] : a.terms()) sum += c * fixed_point_fraction(word, graph);
  return sum;
}

}  // namespace sofic
