#include <random>

#include "doctest.h"

#include "heckecells/hecke.hpp"

using namespace heckecells;

namespace {

LaurentPoly P(const char* s) { return LaurentPoly::parse(s); }

HeckeElement H(const CoxeterSystem& sys, const char* name, const char* coeff = "1") {
  return HeckeElement::standard(sys.element(name), P(coeff));
}

// bar(H_x) as the product of bar(H_s) = H_s + (v - v^-1) along a reduced
// word, using only std_multiply.
std::vector<HeckeElement> bar_standard_by_products(const CoxeterSystem& sys) {
  std::vector<HeckeElement> out;
  for (ElementId x = 0; x < sys.size(); ++x) {
    HeckeElement acc = HeckeElement::standard(sys.identity());
    for (Generator s : sys.word(x)) {
      HeckeElement bs = HeckeElement::standard(sys.generator(s)) +
                        HeckeElement::standard(sys.identity(), P("v - v^-1"));
      acc = std_multiply(sys, acc, bs);
    }
    out.push_back(acc);
  }
  return out;
}

// Independent oracle: solve bar(b_w) = b_w with b_w in H_w + sum v Z[v] H_y
// coefficient by coefficient, from the top of the Bruhat interval down.
std::vector<HeckeElement> kl_by_bar_invariance(const CoxeterSystem& sys) {
  const auto bars = bar_standard_by_products(sys);
  std::vector<HeckeElement> out;
  for (ElementId w = 0; w < sys.size(); ++w) {
    std::vector<LaurentPoly> h(sys.size());
    h[w] = 1;
    for (ElementId y = w; y-- > 0;) {
      if (!sys.bruhat_leq(y, w)) continue;
      LaurentPoly q;
      for (ElementId x = y + 1; x <= w; ++x) {
        if (h[x].is_zero()) continue;
        q += h[x].bar() * bars[x].coefficient(y);
      }
      CHECK((q + q.bar()).is_zero());
      h[y] = q.positive_part();
    }
    out.push_back(HeckeElement::from_dense(std::move(h)));
  }
  return out;
}

// Expansion of h in the KL basis by unitriangular back-substitution.
std::vector<LaurentPoly> in_kl_basis(const CoxeterSystem& sys, const KLBasis& kl,
                                     const HeckeElement& h) {
  DenseHecke rest = h.to_dense(sys.size());
  std::vector<LaurentPoly> coeff(sys.size());
  for (ElementId z = static_cast<ElementId>(sys.size()); z-- > 0;) {
    if (rest[z].is_zero()) continue;
    coeff[z] = rest[z];
    const LaurentPoly c = rest[z];
    for (const auto& [y, hy] : kl.element(z).terms()) rest[y] -= c * hy;
  }
  return coeff;
}

HeckeElement random_element(const CoxeterSystem& sys, std::mt19937& rng) {
  std::uniform_int_distribution<ElementId> pick(0, static_cast<ElementId>(sys.size() - 1));
  std::uniform_int_distribution<int> e(-3, 3), c(-4, 4), k(1, 4);
  HeckeElement h;
  const int terms = k(rng);
  for (int i = 0; i < terms; ++i) {
    h += HeckeElement::standard(pick(rng), LaurentPoly::monomial(c(rng), e(rng)) +
                                               LaurentPoly::monomial(c(rng), e(rng)));
  }
  return h;
}

}  // namespace

TEST_CASE("std_multiply") {
  auto a2 = CoxeterSystem::build(cartan_preset("A2"));
  CHECK(std_multiply(a2, H(a2, "1"), H(a2, "1")) == H(a2, "1", "v^-1 - v") + H(a2, "e"));
  for (ElementId x = 0; x < a2.size(); ++x) {
    auto hx = HeckeElement::standard(x);
    CHECK(std_multiply(a2, hx, H(a2, "e")) == hx);
    CHECK(std_multiply(a2, H(a2, "e"), hx) == hx);
  }
  CHECK(std_multiply(a2, H(a2, "1"), H(a2, "2")) == H(a2, "12"));
  CHECK(std_multiply(a2, H(a2, "12"), H(a2, "1")) == H(a2, "121"));
}

TEST_CASE("std_multiply is associative") {
  auto b2 = CoxeterSystem::build(cartan_preset("B2"));
  std::mt19937 rng(7);
  for (int i = 0; i < 30; ++i) {
    auto a = random_element(b2, rng), b = random_element(b2, rng), c = random_element(b2, rng);
    CHECK(std_multiply(b2, std_multiply(b2, a, b), c) ==
          std_multiply(b2, a, std_multiply(b2, b, c)));
  }
}

TEST_CASE("bar_involution") {
  auto a2 = CoxeterSystem::build(cartan_preset("A2"));
  BarInvolution bar(a2);
  CHECK(bar(H(a2, "e")) == H(a2, "e"));
  CHECK(bar(H(a2, "1")) == H(a2, "1") + H(a2, "e", "v - v^-1"));
  // Oracle: products of bar(H_s).
  const auto bars = bar_standard_by_products(a2);
  for (ElementId x = 0; x < a2.size(); ++x) CHECK(bar.of_standard(x) == bars[x]);

  for (const char* name : {"A2", "B2", "A4"}) {
    auto sys = CoxeterSystem::build(cartan_preset(name));
    BarInvolution b(sys);
    std::mt19937 rng(11);
    for (int i = 0; i < 40; ++i) {
      auto x = random_element(sys, rng), y = random_element(sys, rng);
      CHECK(b(b(x)) == x);
      CHECK(b(std_multiply(sys, x, y)) == std_multiply(sys, b(x), b(y)));
    }
  }
}

TEST_CASE("kl_basis examples") {
  auto a2 = CoxeterSystem::build(cartan_preset("A2"));
  KLBasis kl(a2);
  CHECK(kl.element(a2.identity()) == H(a2, "e"));
  CHECK(kl.element(a2.element("1")) == H(a2, "1") + H(a2, "e", "v"));
  HeckeElement expected;
  for (ElementId y = 0; y < a2.size(); ++y) {
    expected += HeckeElement::standard(y, LaurentPoly::v(3 - a2.length(y)));
  }
  CHECK(kl.element(a2.longest()) == expected);

  auto b2 = CoxeterSystem::build(cartan_preset("B2"));
  KLBasis klb(b2);
  const ElementId w = b2.element("121");
  for (const auto& [y, hy] : klb.element(w).terms()) {
    CHECK(hy == LaurentPoly::v(b2.length(w) - b2.length(y)));
  }
  CHECK(klb.element(w).size() == 6);
}

TEST_CASE("kl_basis agrees with the bar-invariance oracle") {
  for (const char* name : {"A2", "A3", "B2"}) {
    auto sys = CoxeterSystem::build(cartan_preset(name));
    KLBasis kl(sys);
    const auto oracle = kl_by_bar_invariance(sys);
    for (ElementId w = 0; w < sys.size(); ++w) CHECK(kl.element(w) == oracle[w]);
  }
}

TEST_CASE("KLBasisTable invariants") {
  for (const char* name : {"A3", "B2", "B3"}) {
    auto sys = CoxeterSystem::build(cartan_preset(name));
    KLBasis kl(sys);
    BarInvolution bar(sys);
    for (ElementId w = 0; w < sys.size(); ++w) {
      const auto& b = kl.element(w);
      CHECK(b.coefficient(w) == LaurentPoly(1));
      CHECK(bar(b) == b);
      for (const auto& [y, hy] : b.terms()) {
        CHECK(sys.bruhat_leq(y, w));
        CHECK(hy.has_nonnegative_coefficients());
        if (y != w) CHECK(hy.min_degree() >= 1);
      }
    }
  }
}

TEST_CASE("products of b_s along reduced words") {
  for (const char* name : {"A2", "A3", "B2"}) {
    auto sys = CoxeterSystem::build(cartan_preset(name));
    KLBasis kl(sys);
    for (ElementId w = 0; w < sys.size(); ++w) {
      HeckeElement acc = HeckeElement::standard(sys.identity());
      for (Generator s : sys.word(w)) acc = std_multiply(sys, acc, kl.element(sys.generator(s)));
      const auto coeff = in_kl_basis(sys, kl, acc);
      CHECK(coeff[w] == LaurentPoly(1));
      for (ElementId y = 0; y < sys.size(); ++y) {
        if (y == w || coeff[y].is_zero()) continue;
        CHECK(sys.bruhat_leq(y, w));
        CHECK(y != w);
        CHECK(coeff[y].has_nonnegative_coefficients());
      }
    }
    for (int s = 0; s < sys.rank(); ++s) {
      const auto& bs = kl.element(sys.generator(s));
      CHECK(std_multiply(sys, bs, bs) == P("v + v^-1") * bs);
    }
  }
}

TEST_CASE("iota") {
  auto a2 = CoxeterSystem::build(cartan_preset("A2"));
  CHECK(iota(a2, H(a2, "12")) == H(a2, "21"));
  CHECK(iota(a2, H(a2, "1")) == H(a2, "1"));
  for (const char* name : {"A2", "A3"}) {
    auto sys = CoxeterSystem::build(cartan_preset(name));
    KLBasis kl(sys);
    for (ElementId w = 0; w < sys.size(); ++w) {
      CHECK(iota(sys, kl.element(w)) == kl.element(sys.inverse(w)));
    }
  }
  auto a4 = CoxeterSystem::build(cartan_preset("A4"));
  BarInvolution bar(a4);
  std::mt19937 rng(5);
  for (int i = 0; i < 100; ++i) {
    auto h = random_element(a4, rng);
    CHECK(iota(a4, iota(a4, h)) == h);
    CHECK(iota(a4, bar(h)) == bar(iota(a4, h)));
    if (i < 20) {
      auto g = random_element(a4, rng);
      CHECK(iota(a4, std_multiply(a4, h, g)) == std_multiply(a4, iota(a4, g), iota(a4, h)));
    }
  }
}

TEST_CASE("mu_coefficient") {
  auto a2 = CoxeterSystem::build(cartan_preset("A2"));
  KLBasis kl(a2);
  CHECK(kl.mu(a2.identity(), a2.element("1")) == 1);
  for (ElementId y = 0; y < a2.size(); ++y) {
    for (ElementId w = 0; w < a2.size(); ++w) {
      if ((a2.length(w) - a2.length(y)) % 2 == 0) CHECK(kl.mu(y, w) == 0);
      if (!a2.bruhat_leq(y, w)) CHECK(kl.mu(y, w) == 0);
    }
  }
  // h_{s1, w0} = v^2 in S3, so mu vanishes; mu(s1s2, w0) = 1.
  CHECK(kl.mu(a2.element("1"), a2.element("121")) == 0);
  CHECK(kl.mu(a2.element("12"), a2.element("121")) == 1);
}

TEST_CASE("report JSON") {
  auto b2 = CoxeterSystem::build(cartan_preset("B2"));
  KLBasis kl(b2);
  auto j = kl.element_report(b2.element("121"));
  CHECK(j["w"] == "121");
  CHECK(j["expansion"]["121"] == "1");
  CHECK(j["expansion"]["1"] == "v^2");
  CHECK(j["expansion"]["21"] == "v");
  CHECK(j["expansion"]["e"] == "v^3");
  CHECK(kl.report()["basis"].size() == 8);
}
