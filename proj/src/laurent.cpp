#include "heckecells/laurent.hpp"

#include <algorithm>
#include <cctype>
#include <map>

#include "heckecells/error.hpp"

namespace heckecells {

LaurentPoly::LaurentPoly(int constant) {
  if (constant != 0) terms_.emplace_back(0, Integer(constant));
}

LaurentPoly::LaurentPoly(const Integer& constant) {
  if (constant != 0) terms_.emplace_back(0, constant);
}

LaurentPoly LaurentPoly::monomial(const Integer& coefficient, int exponent) {
  LaurentPoly p;
  if (coefficient != 0) p.terms_.emplace_back(exponent, coefficient);
  return p;
}

Integer LaurentPoly::coefficient(int exponent) const {
  auto it = std::lower_bound(
      terms_.begin(), terms_.end(), exponent,
      [](const Term& t, int e) { return t.first < e; });
  if (it != terms_.end() && it->first == exponent) return it->second;
  return 0;
}

void LaurentPoly::add_scaled(const LaurentPoly& other, const Integer& scalar,
                             int shift) {
  if (other.is_zero() || scalar == 0) return;
  std::vector<Term> out;
  out.reserve(terms_.size() + other.terms_.size());
  auto a = terms_.begin();
  auto b = other.terms_.begin();
  while (a != terms_.end() || b != other.terms_.end()) {
    if (b == other.terms_.end() ||
        (a != terms_.end() && a->first < b->first + shift)) {
      out.push_back(std::move(*a));
      ++a;
    } else if (a == terms_.end() || b->first + shift < a->first) {
      out.emplace_back(b->first + shift, b->second * scalar);
      ++b;
    } else {
      Integer c = a->second + b->second * scalar;
      if (c != 0) out.emplace_back(a->first, std::move(c));
      ++a;
      ++b;
    }
  }
  terms_ = std::move(out);
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& other) {
  add_scaled(other, 1);
  return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& other) {
  add_scaled(other, -1);
  return *this;
}

LaurentPoly& LaurentPoly::operator*=(const Integer& scalar) {
  if (scalar == 0) {
    terms_.clear();
  } else {
    for (auto& t : terms_) t.second *= scalar;
  }
  return *this;
}

LaurentPoly& LaurentPoly::operator*=(const LaurentPoly& other) {
  *this = *this * other;
  return *this;
}

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  if (a.size() == 1) {
    LaurentPoly r = b;
    for (auto& t : r.terms_) {
      t.first += a.terms_[0].first;
      t.second *= a.terms_[0].second;
    }
    return r;
  }
  const int lo = a.min_degree() + b.min_degree();
  const int hi = a.max_degree() + b.max_degree();
  std::vector<Integer> dense(static_cast<std::size_t>(hi - lo + 1));
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      dense[static_cast<std::size_t>(ea + eb - lo)] += ca * cb;
    }
  }
  std::vector<LaurentPoly::Term> out;
  for (std::size_t i = 0; i < dense.size(); ++i) {
    if (dense[i] != 0) out.emplace_back(lo + static_cast<int>(i), std::move(dense[i]));
  }
  return LaurentPoly(std::move(out));
}

LaurentPoly LaurentPoly::operator-() const {
  LaurentPoly r = *this;
  for (auto& t : r.terms_) t.second = -t.second;
  return r;
}

LaurentPoly LaurentPoly::bar() const {
  std::vector<Term> out(terms_.rbegin(), terms_.rend());
  for (auto& t : out) t.first = -t.first;
  return LaurentPoly(std::move(out));
}

Integer LaurentPoly::eval_at_one() const {
  Integer s = 0;
  for (const auto& t : terms_) s += t.second;
  return s;
}

bool LaurentPoly::has_nonnegative_coefficients() const {
  return std::all_of(terms_.begin(), terms_.end(),
                     [](const Term& t) { return t.second > 0; });
}

LaurentPoly LaurentPoly::positive_part() const {
  std::vector<Term> out;
  for (const auto& t : terms_) {
    if (t.first > 0) out.push_back(t);
  }
  return LaurentPoly(std::move(out));
}

std::string LaurentPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    const bool negative = c < 0;
    const Integer magnitude = negative ? Integer(-c) : c;
    if (first) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    first = false;
    if (e == 0) {
      out += magnitude.str();
      continue;
    }
    if (magnitude != 1) out += magnitude.str();
    out += "v";
    if (e != 1) out += "^" + std::to_string(e);
  }
  return out;
}

namespace {

class PolyParser {
 public:
  explicit PolyParser(std::string_view text) : s_(text) {}

  LaurentPoly parse() {
    std::map<int, Integer> acc;
    skip_ws();
    if (at_end()) fail("empty polynomial");
    bool first = true;
    while (!at_end()) {
      int sign = 1;
      if (peek() == '+' || peek() == '-') {
        sign = take() == '-' ? -1 : 1;
        skip_ws();
      } else if (!first) {
        fail("expected '+' or '-'");
      }
      first = false;
      auto [e, c] = term();
      acc[e] += sign * c;
      skip_ws();
    }
    LaurentPoly p;
    for (auto& [e, c] : acc) p.add_scaled(LaurentPoly::v(e), c);
    return p;
  }

 private:
  std::pair<int, Integer> term() {
    Integer coefficient = 1;
    bool have_digits = false;
    if (std::isdigit(static_cast<unsigned char>(peek()))) {
      coefficient = digits();
      have_digits = true;
      skip_ws();
      if (peek() == '*') {
        take();
        skip_ws();
      }
    }
    if (peek() != 'v') {
      if (!have_digits) fail("expected coefficient or 'v'");
      return {0, coefficient};
    }
    take();
    int exponent = 1;
    skip_ws();
    if (peek() == '^') {
      take();
      skip_ws();
      bool paren = false;
      if (peek() == '(') {
        paren = true;
        take();
      }
      int sign = 1;
      if (peek() == '-') {
        take();
        sign = -1;
      } else if (peek() == '+') {
        take();
      }
      if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("bad exponent");
      exponent = sign * static_cast<int>(digits());
      if (paren) {
        if (peek() != ')') fail("unbalanced parenthesis");
        take();
      }
    }
    return {exponent, coefficient};
  }

  Integer digits() {
    std::string d;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) d += take();
    return Integer(d);
  }

  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
  }
  bool at_end() const { return pos_ >= s_.size(); }
  char peek() const { return at_end() ? '\0' : s_[pos_]; }
  char take() { return s_[pos_++]; }
  [[noreturn]] void fail(const std::string& why) const {
    throw Error(ErrorKind::MalformedDocument,
                "cannot parse Laurent polynomial '" + std::string(s_) +
                    "': " + why + " at offset " + std::to_string(pos_));
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

LaurentPoly LaurentPoly::parse(std::string_view text) {
  std::string_view trimmed = text;
  while (!trimmed.empty() && std::isspace(static_cast<unsigned char>(trimmed.front())))
    trimmed.remove_prefix(1);
  if (trimmed == "0") return {};
  return PolyParser(text).parse();
}

LaurentPoly add(const LaurentPoly& a, const LaurentPoly& b) { return a + b; }
LaurentPoly mul(const LaurentPoly& a, const LaurentPoly& b) { return a * b; }
LaurentPoly bar(const LaurentPoly& a) { return a.bar(); }
Integer eval_at_one(const LaurentPoly& a) { return a.eval_at_one(); }

}  // namespace heckecells
