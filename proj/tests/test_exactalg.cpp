#include <random>

#include "doctest.h"

#include "heckecells/error.hpp"
#include "heckecells/laurent.hpp"

using namespace heckecells;

namespace {

LaurentPoly P(const char* s) { return LaurentPoly::parse(s); }

LaurentPoly random_poly(std::mt19937& rng) {
  std::uniform_int_distribution<int> nterms(0, 5), expo(-6, 6), coeff(-9, 9);
  LaurentPoly p;
  const int k = nterms(rng);
  for (int i = 0; i < k; ++i) p += LaurentPoly::monomial(coeff(rng), expo(rng));
  return p;
}

}  // namespace

TEST_CASE("add") {
  CHECK(add(P("v + 1"), P("v^-1 - 1")) == P("v + v^-1"));
  CHECK(add(LaurentPoly{}, P("3v^2 - v")) == P("3v^2 - v"));
  CHECK(add(P("v^2 + 2"), P("v^2")) == P("2v^2 + 2"));
  CHECK(add(P("v"), P("-v")).is_zero());
}

TEST_CASE("mul") {
  CHECK(mul(P("v + v^-1"), P("v + v^-1")) == P("v^2 + 2 + v^-2"));
  CHECK(mul(LaurentPoly(1), P("v^3 - 7")) == P("v^3 - 7"));
  CHECK(mul(P("v"), P("v^-1")) == LaurentPoly(1));
  CHECK(mul(P("v - 1"), P("v + 1")) == P("v^2 - 1"));
}

TEST_CASE("bar") {
  CHECK(bar(P("v")) == P("v^-1"));
  CHECK(bar(P("v + v^-1")) == P("v + v^-1"));
  CHECK(bar(P("2v^3 - v")) == P("2v^-3 - v^-1"));
}

TEST_CASE("eval_at_one") {
  CHECK(eval_at_one(P("v + v^-1")) == 2);
  CHECK(eval_at_one(LaurentPoly{}) == 0);
  CHECK(eval_at_one(P("v^3 - 2v + 1")) == 0);
}

TEST_CASE("text format") {
  CHECK(P("v^-1 + 2 + v^3").to_string() == "v^-1 + 2 + v^3");
  CHECK(LaurentPoly{}.to_string() == "0");
  CHECK(P("-v").to_string() == "-v");
  CHECK(P("3 - 2v^2").to_string() == "3 - 2v^2");
  CHECK(P("2*v^(-3) + v").to_string() == "2v^-3 + v");
  CHECK(P("v + v").to_string() == "2v");
  CHECK(P("v - v").is_zero());
  CHECK_THROWS_AS(P("v +"), Error);
  CHECK_THROWS_AS(P("x"), Error);
  CHECK_THROWS_AS(P(""), Error);
}

TEST_CASE("coefficients are arbitrary precision") {
  LaurentPoly p = LaurentPoly::monomial(Integer(1) << 70, 2);
  LaurentPoly q = p * p;
  CHECK(q.coefficient(4) == Integer(1) << 140);
  CHECK(LaurentPoly::parse(q.to_string()) == q);
}

TEST_CASE("ring axioms, bar and evaluation on random samples") {
  std::mt19937 rng(20241018);
  for (int trial = 0; trial < 300; ++trial) {
    const LaurentPoly a = random_poly(rng), b = random_poly(rng), c = random_poly(rng);
    CHECK((a + b) + c == a + (b + c));
    CHECK(a + b == b + a);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * b == b * a);
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a.bar().bar() == a);
    CHECK((a * b).bar() == a.bar() * b.bar());
    CHECK((a * b).eval_at_one() == a.eval_at_one() * b.eval_at_one());
    CHECK(LaurentPoly::parse(a.to_string()) == a);
    for (const auto& [e, coeff] : a.terms()) CHECK(coeff != 0);
  }
}
