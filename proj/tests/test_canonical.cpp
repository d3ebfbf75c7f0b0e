#include <random>
#include <thread>

#include "doctest.h"

#include "heckecells/canonical.hpp"
#include "heckecells/error.hpp"

using namespace heckecells;

namespace {

LaurentPoly P(const char* s) { return LaurentPoly::parse(s); }

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error raised");
  return ErrorKind::MalformedDocument;
}

bool check_passed(const ValidationReport& r, const std::string& name) {
  for (const auto& c : r.checks) {
    if (c.name == name) return c.passed;
  }
  FAIL("no check named " << name);
  return false;
}

// Re-expands a pkl-basis vector in the standard basis.
HeckeElement to_standard(const ValidatedTable& t, const PklExpansion& e) {
  DenseHecke out(t.size());
  for (const auto& [z, c] : e.terms()) {
    for (const auto& [y, h] : t.std_expansion(z).terms()) out[y] += c * h;
  }
  return HeckeElement::from_dense(std::move(out));
}

}  // namespace

TEST_CASE("p = 0 table is the KL basis and validates") {
  auto a3 = CoxeterSystem::build(cartan_preset("A3"));
  KLBasis kl(a3);
  auto t = load_table(nlohmann::json::parse(R"({"p":0})"), kl);
  for (ElementId w = 0; w < a3.size(); ++w) {
    CHECK(t.kl_expansion[w] == HeckeElement::standard(w));
    CHECK(t.std_expansion[w] == kl.element(w));
  }
  auto r = validate(t);
  CHECK(r.passed());
  CHECK(check_passed(r, "structure coefficients, all pairs"));
}

TEST_CASE("built-in B2 table at p = 2") {
  auto b2 = CoxeterSystem::build(cartan_preset("B2"));
  KLBasis kl(b2);
  auto t = load_table(b2_p2_document(), kl);
  CHECK(t.p == 2);
  CHECK(t.provenance == "builtin");
  const ElementId sts = b2.element("121");
  for (ElementId w = 0; w < b2.size(); ++w) {
    if (w == sts) {
      CHECK(t.kl_expansion[w] ==
            HeckeElement::standard(sts) + HeckeElement::standard(b2.element("1")));
      CHECK(t.std_expansion[w] == kl.element(sts) + kl.element(b2.element("1")));
    } else {
      CHECK(t.kl_expansion[w] == HeckeElement::standard(w));
    }
  }
  ValidationReport r;
  auto v = ValidatedTable::from(t, &r);
  CHECK(r.passed());
  CHECK(load_table(t.to_json(), kl).kl_expansion == t.kl_expansion);
}

TEST_CASE("rejected tables") {
  auto a3 = CoxeterSystem::build(cartan_preset("A3"));
  KLBasis kl(a3);
  using nlohmann::json;
  CHECK(kind_of([&] { load_table(json::parse(R"({"basis":{}})"), kl); }) ==
        ErrorKind::MalformedDocument);
  CHECK(kind_of([&] { load_table(json::parse(R"({"p":4})"), kl); }) ==
        ErrorKind::MalformedDocument);
  CHECK(kind_of([&] { load_table(json::parse(R"({"p":2,"system":"B2"})"), kl); }) ==
        ErrorKind::MalformedDocument);
  CHECK(kind_of([&] {
          load_table(json::parse(R"({"p":2,"basis":{"121":{"121":"1","9":"1"}}})"), kl);
        }) == ErrorKind::UnknownElement);
  CHECK(kind_of([&] {
          load_table(json::parse(R"({"p":2,"basis":{"1":{"1":"1","2":"1"}}})"), kl);
        }) == ErrorKind::NonUnitriangular);
  CHECK(kind_of([&] {
          load_table(json::parse(R"({"p":2,"basis":{"12":{"1":"1"}}})"), kl);
        }) == ErrorKind::NonUnitriangular);
  CHECK(kind_of([&] {
          load_table(json::parse(R"({"p":2,"basis":{"12":{"12":"1","1":"v +"}}})"), kl);
        }) == ErrorKind::MalformedDocument);

  // Fabricated negative multiplicity.
  auto neg = load_table(
      json::parse(R"({"p":2,"basis":{"121":{"121":"1","1":"-1"},"121":{"121":"1","1":"-1"}}})"),
      kl);
  auto r = validate(neg);
  CHECK_FALSE(r.passed());
  CHECK_FALSE(check_passed(r, "multiplicities nonnegative"));
  CHECK(kind_of([&] { ValidatedTable::from(neg); }) == ErrorKind::ValidationFailed);

  // pkl_w = b_w + v b_y is not self-dual.
  auto vb = load_table(json::parse(R"({"p":3,"basis":{"12":{"12":"1","1":"v"}}})"), kl);
  auto r2 = validate(vb);
  CHECK_FALSE(check_passed(r2, "self-duality"));
  CHECK_FALSE(check_passed(r2, "iota-compatibility"));

  // A p = 0 table must be the KL basis.
  auto z = load_table(json::parse(R"({"p":0,"basis":{"121":{"121":"1","1":"1"}}})"), kl);
  CHECK_FALSE(check_passed(validate(z), "p = 0 gives the KL basis"));
}

TEST_CASE("structure_coefficients examples") {
  auto b2 = CoxeterSystem::build(cartan_preset("B2"));
  KLBasis kl(b2);
  auto t = ValidatedTable::from(load_table(b2_p2_document(), kl));
  for (ElementId y = 0; y < b2.size(); ++y) {
    CHECK(t.structure_coefficients(b2.identity(), y) == HeckeElement::standard(y));
    CHECK(t.structure_coefficients(y, b2.identity()) == HeckeElement::standard(y));
  }
  for (const char* name : {"A3", "B2"}) {
    auto sys = CoxeterSystem::build(cartan_preset(name));
    KLBasis k(sys);
    auto tt = ValidatedTable::from(sys.size() == 8 ? load_table(b2_p2_document(), k)
                                                   : kl_table(k));
    for (ElementId x = 0; x < sys.size(); ++x) {
      for (Generator s = 0; s < sys.rank(); ++s) {
        if (sys.is_left_descent(s, x)) {
          CHECK(tt.left_generator_product(s, x) ==
                HeckeElement::standard(x, P("v + v^-1")));
        }
        if (sys.is_right_descent(x, s)) {
          CHECK(tt.right_generator_product(x, s) ==
                HeckeElement::standard(x, P("v + v^-1")));
        }
        CHECK(tt.left_generator_product(s, x) ==
              tt.structure_coefficients(sys.generator(s), x));
      }
    }
  }
  // pkl_121 pkl_121 at p = 2, against direct multiplication in the standard basis.
  const ElementId sts = b2.element("121");
  const auto& sq = t.structure_coefficients(sts, sts);
  CHECK(to_standard(t, sq) == std_multiply(b2, t.std_expansion(sts), t.std_expansion(sts)));
  for (const auto& [z, c] : sq.terms()) {
    CHECK(c.is_self_dual());
    CHECK(c.has_nonnegative_coefficients());
  }
}

TEST_CASE("back-substitution round trip") {
  auto b2 = CoxeterSystem::build(cartan_preset("B2"));
  KLBasis kl(b2);
  auto t = ValidatedTable::from(load_table(b2_p2_document(), kl));
  for (ElementId x = 0; x < b2.size(); ++x) {
    for (ElementId y = 0; y < b2.size(); ++y) {
      const auto& mu = t.structure_coefficients(x, y);
      CHECK(to_standard(t, mu) == std_multiply(b2, t.std_expansion(x), t.std_expansion(y)));
      // iota symmetry mu^z_{x,y} = mu^{z^-1}_{y^-1,x^-1}.
      const auto& other = t.structure_coefficients(b2.inverse(y), b2.inverse(x));
      CHECK(iota(b2, mu) == other);
    }
  }
  auto a4 = CoxeterSystem::build(cartan_preset("A4"));
  KLBasis kl5(a4);
  auto t5 = ValidatedTable::from(kl_table(kl5));
  std::mt19937 rng(3);
  std::uniform_int_distribution<ElementId> pick(0, static_cast<ElementId>(a4.size() - 1));
  for (int i = 0; i < 200; ++i) {
    const ElementId x = pick(rng), y = pick(rng);
    CHECK(to_standard(t5, t5.structure_coefficients(x, y)) ==
          std_multiply(a4, t5.std_expansion(x), t5.std_expansion(y)));
  }
}

TEST_CASE("p = 0 structure coefficients are the KL ones") {
  auto a2 = CoxeterSystem::build(cartan_preset("A2"));
  KLBasis kl(a2);
  auto t = ValidatedTable::from(kl_table(kl));
  // Independent expansion: solve against b_z directly, largest first.
  for (ElementId x = 0; x < a2.size(); ++x) {
    for (ElementId y = 0; y < a2.size(); ++y) {
      DenseHecke rest = std_multiply(a2, kl.element(x), kl.element(y)).to_dense(a2.size());
      HeckeElement expected;
      for (ElementId z = static_cast<ElementId>(a2.size()); z-- > 0;) {
        if (rest[z].is_zero()) continue;
        const LaurentPoly c = rest[z];
        expected += HeckeElement::standard(z, c);
        for (const auto& [u, h] : kl.element(z).terms()) rest[u] -= c * h;
      }
      CHECK(t.structure_coefficients(x, y) == expected);
    }
  }
}

TEST_CASE("concurrent structure coefficient queries agree") {
  auto b2 = CoxeterSystem::build(cartan_preset("B2"));
  KLBasis kl(b2);
  auto t = ValidatedTable::from(load_table(b2_p2_document(), kl));
  std::vector<std::vector<PklExpansion>> seen(4);
  std::vector<std::thread> workers;
  for (int k = 0; k < 4; ++k) {
    workers.emplace_back([&, k] {
      for (ElementId x = 0; x < b2.size(); ++x) {
        for (ElementId y = 0; y < b2.size(); ++y) {
          seen[k].push_back(t.structure_coefficients(x, y));
        }
      }
    });
  }
  for (auto& w : workers) w.join();
  for (int k = 1; k < 4; ++k) CHECK(seen[k] == seen[0]);
}
