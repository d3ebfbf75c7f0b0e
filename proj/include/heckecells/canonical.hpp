#pragma once

// p-canonical bases given as tables of corrections to the KL basis.
//
// A table stores pkl_w = sum_y m_{y,w} b_y for each w (entries default to
// pkl_w = b_w).  Only a ValidatedTable can be used downstream; it owns the
// cache of structure coefficients.

#include <map>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "heckecells/coxeter.hpp"
#include "heckecells/hecke.hpp"

namespace heckecells {

// A HeckeElement whose ids index the pkl basis rather than the standard basis.
using PklExpansion = HeckeElement;

struct CanonicalBasisTable {
  const CoxeterSystem* system = nullptr;
  const KLBasis* kl = nullptr;
  int p = 0;
  std::string provenance;
  std::vector<HeckeElement> kl_expansion;   // pkl_w in the KL basis
  std::vector<HeckeElement> std_expansion;  // pkl_w in the standard basis

  std::size_t size() const { return kl_expansion.size(); }
  /// Entries differing from the KL basis, as a table document.
  nlohmann::json to_json() const;
};

bool is_prime(int p);

/// pkl_w = b_w for all w.
CanonicalBasisTable kl_table(const KLBasis& kl, int p = 0, std::string provenance = "kl");
/// `{"system":"B2","p":2,"basis":{"121":{"121":"1","1":"1"}},...}`
CanonicalBasisTable load_table(const nlohmann::json& doc, const KLBasis& kl);
/// Built-in table for B2 at p = 2.
nlohmann::json b2_p2_document();

struct ValidationCheck {
  std::string name;
  bool passed = true;
  std::string detail;  // first failure, if any
};

struct ValidationReport {
  std::vector<ValidationCheck> checks;
  bool passed() const;
  nlohmann::json to_json() const;
};

/// Runs every check; never throws on a failing check.
ValidationReport validate(const CanonicalBasisTable& table);

/// Largest group for which validation multiplies all pairs pkl_x pkl_y;
/// above it only products with generators are checked.
inline constexpr std::size_t kAllPairsValidationLimit = 24;

class ValidatedTable {
 public:
  /// Throws ValidationFailed if validate() reports a failure.
  static ValidatedTable from(CanonicalBasisTable table, ValidationReport* report = nullptr);

  const CanonicalBasisTable& table() const { return table_; }
  const CoxeterSystem& system() const { return *table_.system; }
  const KLBasis& kl() const { return *table_.kl; }
  int p() const { return table_.p; }
  std::size_t size() const { return table_.size(); }
  const HeckeElement& std_expansion(ElementId w) const { return table_.std_expansion[w]; }

  /// Unitriangular back-substitution of a standard-basis vector.
  PklExpansion to_pkl(DenseHecke standard) const;
  /// b_s pkl_y and pkl_y b_s in the pkl basis (precomputed).
  const PklExpansion& left_generator_product(Generator s, ElementId y) const {
    return left_products_[y][s];
  }
  const PklExpansion& right_generator_product(ElementId y, Generator s) const {
    return right_products_[y][s];
  }
  /// pkl_x pkl_y = sum_z mu^z_{x,y} pkl_z.  Memoised; safe to call concurrently.
  const PklExpansion& structure_coefficients(ElementId x, ElementId y) const;

 private:
  struct Cache {
    std::shared_mutex mutex;
    std::map<std::pair<ElementId, ElementId>, std::unique_ptr<const PklExpansion>> entries;
  };

  explicit ValidatedTable(CanonicalBasisTable table) : table_(std::move(table)) {}

  CanonicalBasisTable table_;
  std::vector<std::vector<PklExpansion>> left_products_;   // [y][s]
  std::vector<std::vector<PklExpansion>> right_products_;  // [y][s]
  std::unique_ptr<Cache> cache_ = std::make_unique<Cache>();
};

}  // namespace heckecells
