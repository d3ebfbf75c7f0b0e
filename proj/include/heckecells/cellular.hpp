#pragma once

// The cell datum of the p-canonical basis of a symmetric group and the
// structural checks around it: cellularity, Property A, and the agreement of
// the two-sided cell order with the dominance order.

#include <map>
#include <string>
#include <vector>

#include "json.hpp"

#include "heckecells/cells.hpp"
#include "heckecells/tableaux.hpp"

namespace heckecells {

/// One named check with a machine-readable witness when it fails.
struct Verdict {
  std::string name;
  bool passed = true;
  std::string detail;
  nlohmann::json witness;  // null when passed
};

struct VerificationReport {
  std::string title;
  std::string note;
  std::vector<Verdict> checks;
  nlohmann::json data;  // coefficient tables and similar
  bool passed() const;
  nlohmann::json to_json() const;
};

/// (Lambda, *, M, C) with Lambda the partitions of n under dominance, * = iota,
/// M(lambda) the standard tableaux of shape lambda and C(P, Q) = pkl_w for
/// w = rs_inverse(P, Q).
class CellDatum {
 public:
  struct Label {
    std::size_t shape;  // index into shapes()
    std::size_t S;      // index into tableaux(shape), from P
    std::size_t T;      // from Q
  };

  int n() const { return n_; }
  const ValidatedTable& table() const { return *table_; }
  const CoxeterSystem& system() const { return table_->system(); }
  const std::vector<Partition>& shapes() const { return shapes_; }
  const std::vector<StandardTableau>& tableaux(std::size_t shape) const {
    return tableaux_[shape];
  }
  /// C^lambda_{S,T}.
  ElementId element(std::size_t shape, std::size_t S, std::size_t T) const {
    return image_[shape][S][T];
  }
  const Label& label(ElementId w) const { return label_[w]; }
  /// Strict dominance between shapes.
  bool below(std::size_t mu, std::size_t lambda) const;
  /// Index set spanning A(< lambda).
  std::vector<ElementId> lower_span(std::size_t shape) const;

  /// Exchanges the images of two basis elements (test sabotage).
  void swap_images(ElementId a, ElementId b);

  nlohmann::json to_json() const;

 private:
  friend CellDatum build_cell_datum(const ValidatedTable& table);
  int n_ = 0;
  const ValidatedTable* table_ = nullptr;
  std::vector<Partition> shapes_;
  std::vector<std::vector<StandardTableau>> tableaux_;
  std::vector<std::vector<std::vector<ElementId>>> image_;
  std::vector<Label> label_;
};

/// Throws UnsupportedType unless the system is of type A.
CellDatum build_cell_datum(const ValidatedTable& table);

/// Throws CellMismatch unless left cells are Q-fibers, right cells P-fibers
/// and two-sided cells shape fibers.
void rs_cross_check(const CellAtlas& atlas);

/// Axioms (i)-(iii); (iii) on the generators b_s, with the tables r_s(S', S)
/// in the report data.
VerificationReport verify_axioms(const CellDatum& datum, const CellAtlas& atlas);

/// No two distinct left (right) cells inside one two-sided cell are comparable.
VerificationReport verify_property_a(const CellAtlas& atlas);
VerificationReport verify_property_a(const CellDecomposition& left,
                                     const CellDecomposition& right,
                                     const CellDecomposition& two_sided);

/// Two-sided cell order against dominance of the RS shapes, both directions.
VerificationReport verify_orders(const CellAtlas& atlas);

/// p mu^y_{s,x} depends only on (s, P(x), P(y)) for x ~_L y.
VerificationReport struct_coeff_independence(const CellAtlas& atlas);

}  // namespace heckecells
