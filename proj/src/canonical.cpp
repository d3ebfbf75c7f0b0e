#include "heckecells/canonical.hpp"

#include <algorithm>

#include "heckecells/error.hpp"

namespace heckecells {

namespace {

HeckeElement expand_in_standard(const KLBasis& kl, const HeckeElement& in_kl) {
  DenseHecke out(kl.system().size());
  for (const auto& [y, m] : in_kl.terms()) {
    for (const auto& [z, h] : kl.element(y).terms()) out[z] += m * h;
  }
  return HeckeElement::from_dense(std::move(out));
}

// pkl_z is H_z plus terms with smaller ElementId, so peeling off the largest
// id first is exact.
PklExpansion back_substitute(const CanonicalBasisTable& table, DenseHecke rest) {
  DenseHecke coeff(rest.size());
  for (std::size_t z = rest.size(); z-- > 0;) {
    if (rest[z].is_zero()) continue;
    const LaurentPoly c = rest[z];
    for (const auto& [y, h] : table.std_expansion[z].terms()) rest[y] -= c * h;
    coeff[z] = c;
  }
  return HeckeElement::from_dense(std::move(coeff));
}

struct Products {
  std::vector<std::vector<PklExpansion>> left, right;
};

Products generator_products(const CanonicalBasisTable& table) {
  const CoxeterSystem& sys = *table.system;
  Products out;
  out.left.resize(sys.size());
  out.right.resize(sys.size());
  for (ElementId y = 0; y < sys.size(); ++y) {
    const DenseHecke py = table.std_expansion[y].to_dense(sys.size());
    for (Generator s = 0; s < sys.rank(); ++s) {
      out.left[y].push_back(back_substitute(table, left_mult_kl_generator(sys, s, py)));
      out.right[y].push_back(back_substitute(table, right_mult_kl_generator(sys, py, s)));
    }
  }
  return out;
}

// Returns an empty string if every coefficient is self-dual and nonnegative.
std::string check_structure_coefficients(const CoxeterSystem& sys, const PklExpansion& e,
                                         const std::string& label) {
  for (const auto& [z, c] : e.terms()) {
    if (!c.has_nonnegative_coefficients() || !c.is_self_dual()) {
      return label + ": coefficient of pkl_" + sys.element_name(z) + " is " + c.to_string();
    }
  }
  return {};
}

ValidationReport run_validation(const CanonicalBasisTable& table, Products* keep) {
  const CoxeterSystem& sys = *table.system;
  ValidationReport report;
  auto fail = [](ValidationCheck& c, const std::string& why) {
    if (c.passed) c.detail = why;
    c.passed = false;
  };

  ValidationCheck characteristic{"characteristic", true, ""};
  if (table.p != 0 && !is_prime(table.p)) {
    fail(characteristic, "p = " + std::to_string(table.p) + " is neither 0 nor prime");
  }

  ValidationCheck unitriangular{"unitriangularity", true, ""};
  ValidationCheck nonneg{"multiplicities nonnegative", true, ""};
  ValidationCheck self_dual{"self-duality", true, ""};
  ValidationCheck iota_compat{"iota-compatibility", true, ""};
  ValidationCheck p0{"p = 0 gives the KL basis", true, ""};
  for (ElementId w = 0; w < sys.size(); ++w) {
    const auto& e = table.kl_expansion[w];
    const std::string wn = sys.element_name(w);
    if (e.coefficient(w) != LaurentPoly(1)) fail(unitriangular, "m_{w,w} != 1 for w = " + wn);
    for (const auto& [y, m] : e.terms()) {
      const std::string at = "m_{" + sys.element_name(y) + "," + wn + "} = " + m.to_string();
      if (y != w && !sys.bruhat_leq(y, w)) fail(unitriangular, at + " but y is not below w");
      if (!m.has_nonnegative_coefficients()) fail(nonneg, at);
      if (!m.is_self_dual()) fail(self_dual, at + " is not self-dual");
      if (table.kl_expansion[sys.inverse(w)].coefficient(sys.inverse(y)) != m) {
        fail(iota_compat, at + " differs from m_{y^-1,w^-1}");
      }
    }
    if (table.p == 0 && e.size() != 1) fail(p0, "pkl_" + wn + " != b_" + wn);
  }
  report.checks = {characteristic, unitriangular, nonneg, self_dual, iota_compat, p0};
  if (!unitriangular.passed) {
    // Back-substitution is meaningless without unitriangularity.
    report.checks.push_back({"structure coefficients", false, "skipped: not unitriangular"});
    return report;
  }

  Products products = generator_products(table);
  ValidationCheck gen{"structure coefficients with generators", true, ""};
  for (ElementId y = 0; y < sys.size() && gen.passed; ++y) {
    for (Generator s = 0; s < sys.rank(); ++s) {
      const std::string sn = std::to_string(s + 1), yn = sys.element_name(y);
      auto a = check_structure_coefficients(sys, products.left[y][s], "b_" + sn + " pkl_" + yn);
      if (!a.empty()) fail(gen, a);
      auto b = check_structure_coefficients(sys, products.right[y][s], "pkl_" + yn + " b_" + sn);
      if (!b.empty()) fail(gen, b);
    }
  }
  report.checks.push_back(gen);
  if (sys.size() <= kAllPairsValidationLimit) {
    ValidationCheck all{"structure coefficients, all pairs", true, ""};
    for (ElementId x = 0; x < sys.size() && all.passed; ++x) {
      for (ElementId y = 0; y < sys.size() && all.passed; ++y) {
        const HeckeElement prod =
            std_multiply(sys, table.std_expansion[x], table.std_expansion[y]);
        auto e = check_structure_coefficients(
            sys, back_substitute(table, prod.to_dense(sys.size())),
            "pkl_" + sys.element_name(x) + " pkl_" + sys.element_name(y));
        if (!e.empty()) fail(all, e);
      }
    }
    report.checks.push_back(all);
  }
  if (keep) *keep = std::move(products);
  return report;
}

}  // namespace

bool is_prime(int p) {
  if (p < 2) return false;
  for (int d = 2; d * d <= p; ++d) {
    if (p % d == 0) return false;
  }
  return true;
}

nlohmann::json CanonicalBasisTable::to_json() const {
  nlohmann::json basis = nlohmann::json::object();
  for (ElementId w = 0; w < size(); ++w) {
    if (kl_expansion[w].size() == 1) continue;
    basis[system->element_name(w)] = hecke_element_to_json(*system, kl_expansion[w]);
  }
  return {{"system", system->name()}, {"p", p}, {"basis", basis}, {"provenance", provenance}};
}

CanonicalBasisTable kl_table(const KLBasis& kl, int p, std::string provenance) {
  const CoxeterSystem& sys = kl.system();
  CanonicalBasisTable t;
  t.system = &sys;
  t.kl = &kl;
  t.p = p;
  t.provenance = std::move(provenance);
  for (ElementId w = 0; w < sys.size(); ++w) {
    t.kl_expansion.push_back(HeckeElement::standard(w));
    t.std_expansion.push_back(kl.element(w));
  }
  return t;
}

CanonicalBasisTable load_table(const nlohmann::json& doc, const KLBasis& kl) {
  const CoxeterSystem& sys = kl.system();
  auto malformed = [](const std::string& why) {
    return Error(ErrorKind::MalformedDocument, "p-canonical table: " + why);
  };
  if (!doc.is_object()) throw malformed("expected an object");
  if (!doc.contains("p") || !doc["p"].is_number_integer()) throw malformed("missing integer 'p'");
  const int p = doc["p"].get<int>();
  if (p != 0 && !is_prime(p)) throw malformed("p must be 0 or a prime");
  if (doc.contains("system")) {
    if (!doc["system"].is_string()) throw malformed("'system' must be a string");
    if (doc["system"].get<std::string>() != sys.name()) {
      throw malformed("table is for " + doc["system"].get<std::string>() + ", not " + sys.name());
    }
  }
  std::string provenance = "external";
  if (doc.contains("provenance")) {
    if (!doc["provenance"].is_string()) throw malformed("'provenance' must be a string");
    provenance = doc["provenance"].get<std::string>();
  }
  CanonicalBasisTable t = kl_table(kl, p, provenance);
  if (!doc.contains("basis")) return t;
  if (!doc["basis"].is_object()) throw malformed("'basis' must be an object");
  for (const auto& [wname, entry] : doc["basis"].items()) {
    const ElementId w = sys.element(wname);
    if (!entry.is_object()) throw malformed("entry for " + wname + " must be an object");
    DenseHecke m(sys.size());
    for (const auto& [yname, coeff] : entry.items()) {
      const ElementId y = sys.element(yname);
      if (!coeff.is_string() && !coeff.is_number_integer()) {
        throw malformed("coefficient of " + yname + " in " + wname + " must be a string");
      }
      m[y] = coeff.is_string() ? LaurentPoly::parse(coeff.get<std::string>())
                               : LaurentPoly(coeff.get<int>());
      if (!m[y].is_zero() && y != w && !sys.bruhat_leq(y, w)) {
        throw Error(ErrorKind::NonUnitriangular,
                    "pkl_" + wname + " involves b_" + yname + " which is not below it");
      }
    }
    if (m[w] != LaurentPoly(1)) {
      throw Error(ErrorKind::NonUnitriangular, "pkl_" + wname + " must contain b_" + wname +
                                                   " with coefficient 1");
    }
    t.kl_expansion[w] = HeckeElement::from_dense(std::move(m));
    t.std_expansion[w] = expand_in_standard(kl, t.kl_expansion[w]);
  }
  return t;
}

nlohmann::json b2_p2_document() {
  return nlohmann::json::parse(
      R"({"system":"B2","p":2,"basis":{"121":{"121":"1","1":"1"}},"provenance":"builtin"})");
}

bool ValidationReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.passed; });
}

nlohmann::json ValidationReport::to_json() const {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& c : checks) {
    nlohmann::json j = {{"check", c.name}, {"passed", c.passed}};
    if (!c.passed) j["detail"] = c.detail;
    out.push_back(j);
  }
  return {{"passed", passed()}, {"checks", out}};
}

ValidationReport validate(const CanonicalBasisTable& table) {
  return run_validation(table, nullptr);
}

ValidatedTable ValidatedTable::from(CanonicalBasisTable table, ValidationReport* report) {
  Products products;
  ValidationReport r = run_validation(table, &products);
  if (report) *report = r;
  if (!r.passed()) {
    for (const auto& c : r.checks) {
      if (!c.passed) {
        throw Error(ErrorKind::ValidationFailed, c.name + " failed: " + c.detail);
      }
    }
  }
  ValidatedTable v(std::move(table));
  v.left_products_ = std::move(products.left);
  v.right_products_ = std::move(products.right);
  return v;
}

PklExpansion ValidatedTable::to_pkl(DenseHecke standard) const {
  return back_substitute(table_, std::move(standard));
}

const PklExpansion& ValidatedTable::structure_coefficients(ElementId x, ElementId y) const {
  const auto key = std::make_pair(x, y);
  {
    std::shared_lock lock(cache_->mutex);
    auto it = cache_->entries.find(key);
    if (it != cache_->entries.end()) return *it->second;
  }
  const HeckeElement prod = std_multiply(system(), std_expansion(x), std_expansion(y));
  auto value = std::make_unique<const PklExpansion>(to_pkl(prod.to_dense(size())));
  std::unique_lock lock(cache_->mutex);
  // A concurrent caller may have won the race; both values are identical.
  auto [it, inserted] = cache_->entries.try_emplace(key, std::move(value));
  return *it->second;
}

}  // namespace heckecells
