#pragma once

#include "sofic/schreier.hpp"

#include <map>
#include <string>

namespace sofic {

/// A word over generator letters; an uppercase letter is the inverse of its
/// lowercase letter. The empty word is the neutral element.
using GroupWord = std::string;

/// Free reduction: cancels adjacent letter / case-toggled letter pairs.
GroupWord reduce_word(const GroupWord& word);
GroupWord inverse_word(const GroupWord& word);

/// Finite formal sum of reduced words with nonzero real coefficients.
class GroupRingElement {
 public:
  GroupRingElement() = default;
  /// Single term c * w.
  GroupRingElement(double coefficient, const GroupWord& word);

  /// Parses sums such as "2 - s - S", "0.5*st + 3", "(1 + s + t)*(1 + S + T)".
  /// Words are runs of letters; "1" alone is the neutral element.
  static GroupRingElement parse(const std::string& text);

  [[nodiscard]] const std::map<GroupWord, double>& terms() const noexcept { return terms_; }
  [[nodiscard]] bool is_zero() const noexcept { return terms_.empty(); }
  [[nodiscard]] bool has_integer_coefficients() const;
  [[nodiscard]] double coefficient(const GroupWord& word) const;
  /// Longest word length among the terms.
  [[nodiscard]] std::size_t max_word_length() const;
  /// a* : conjugate coefficients, inverse words.
  [[nodiscard]] GroupRingElement adjoint() const;
  [[nodiscard]] std::string to_string() const;

  GroupRingElement& operator+=(const GroupRingElement& other);
  GroupRingElement& operator-=(const GroupRingElement& other);
  GroupRingElement& operator*=(double scalar);
  friend GroupRingElement operator+(GroupRingElement a, const GroupRingElement& b) { return a += b; }
  friend GroupRingElement operator-(GroupRingElement a, const GroupRingElement& b) { return a -= b; }
  friend GroupRingElement operator*(const GroupRingElement& a, const GroupRingElement& b);
  friend bool operator==(const GroupRingElement&, const GroupRingElement&) = default;

 private:
  void add_term(double coefficient, const GroupWord& word);
  std::map<GroupWord, double> terms_;
};

/// Groups with a built-in word problem: Z^d and the free group F_k, each on
/// the standard letters s, t, u, ... (uppercase inverses).
struct LimitGroup {
  enum class Kind { Abelian, Free };
  Kind kind = Kind::Abelian;
  std::size_t rank = 1;

  static LimitGroup integers(std::size_t d) { return {Kind::Abelian, d}; }
  static LimitGroup free(std::size_t k) { return {Kind::Free, k}; }
  /// "Z", "Z2", "Zd" for Z^d; "F2", "Fk" for free groups.
  static LimitGroup parse(const std::string& name);
  [[nodiscard]] std::string name() const;
};

/// Whether the word evaluates to the identity of the group.
bool is_identity_in(const GroupWord& word, const LimitGroup& group);

/// Trace of the left regular representation: sum of the coefficients of the
/// words that evaluate to the identity.
double limit_trace(const GroupRingElement& a, const LimitGroup& group);

/// Fraction of vertices fixed by the word's action.
double fixed_point_fraction(const GroupWord& word, const SchreierGraph& graph);

/// Normalized trace of the representation of `a` on `graph`, computed from
/// fixed points without forming the matrix.
double schreier_trace(const GroupRingElement& a, const SchreierGraph& graph);

}  // namespace sofic
