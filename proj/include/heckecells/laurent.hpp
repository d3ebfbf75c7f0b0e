#pragma once

// Exact Laurent polynomials in one variable v with arbitrary precision
// integer coefficients.  All symbolic coefficients of the library (Hecke
// algebra structure constants, canonical basis expansions, cell module
// actions) are values of this type.

#include <compare>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace heckecells {

using Integer = boost::multiprecision::cpp_int;

class LaurentPoly {
 public:
  using Term = std::pair<int, Integer>;  // (exponent, coefficient)

  LaurentPoly() = default;
  LaurentPoly(int constant);  // NOLINT(google-explicit-constructor)
  LaurentPoly(const Integer& constant);  // NOLINT(google-explicit-constructor)

  static LaurentPoly monomial(const Integer& coefficient, int exponent);
  /// v^exponent
  static LaurentPoly v(int exponent = 1) { return monomial(1, exponent); }

  /// Terms sorted by strictly increasing exponent; no coefficient is zero.
  std::span<const Term> terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  std::size_t size() const noexcept { return terms_.size(); }
  Integer coefficient(int exponent) const;
  // Only meaningful for nonzero polynomials.
  int min_degree() const { return terms_.front().first; }
  int max_degree() const { return terms_.back().first; }

  LaurentPoly& operator+=(const LaurentPoly& other);
  LaurentPoly& operator-=(const LaurentPoly& other);
  LaurentPoly& operator*=(const LaurentPoly& other);
  LaurentPoly& operator*=(const Integer& scalar);

  /// this += scalar * v^shift * other, without temporaries.
  void add_scaled(const LaurentPoly& other, const Integer& scalar, int shift = 0);

  LaurentPoly operator-() const;
  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
  friend LaurentPoly operator*(LaurentPoly a, const Integer& s) { return a *= s; }
  friend LaurentPoly operator*(const Integer& s, LaurentPoly a) { return a *= s; }

  friend bool operator==(const LaurentPoly&, const LaurentPoly&) = default;

  /// v -> v^-1.
  LaurentPoly bar() const;
  /// Sum of coefficients.
  Integer eval_at_one() const;
  bool is_self_dual() const { return bar() == *this; }
  bool has_nonnegative_coefficients() const;
  /// Keep only terms with exponent > 0.
  LaurentPoly positive_part() const;

  /// Monomial-sum text form, ascending exponent: "v^-1 + 2 + 3v^4", "0".
  std::string to_string() const;
  static LaurentPoly parse(std::string_view text);

 private:
  explicit LaurentPoly(std::vector<Term> terms) : terms_(std::move(terms)) {}
  std::vector<Term> terms_;
};

LaurentPoly add(const LaurentPoly& a, const LaurentPoly& b);
LaurentPoly mul(const LaurentPoly& a, const LaurentPoly& b);
LaurentPoly bar(const LaurentPoly& a);
Integer eval_at_one(const LaurentPoly& a);

}  // namespace heckecells
