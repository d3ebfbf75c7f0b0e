#pragma once

// Left, right and two-sided p-cells and their cell modules.
//
// x <=_L y iff pkl_x occurs in h pkl_y for some h.  Every h is a
// Z[v,v^-1]-combination of products of the b_s, so the transitive closure of
// the one-step relation "pkl_x occurs in b_s pkl_y" is the full preorder; the
// graphs below only contain these generator edges.

#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "json.hpp"

#include "heckecells/canonical.hpp"
#include "heckecells/matrix.hpp"

namespace heckecells {

enum class Side { Left, Right, TwoSided };
std::string to_string(Side side);

/// edges[y] lists the x != y with pkl_x occurring in b_s pkl_y (left),
/// pkl_y b_s (right) or either (two-sided), for some generator s.
struct PreorderGraph {
  std::vector<std::vector<ElementId>> edges;
};

PreorderGraph preorder_graph(const ValidatedTable& table, Side side);

class CellDecomposition {
 public:
  /// Strongly connected components of the graph, numbered by their minimal
  /// element, with the condensation order.
  static CellDecomposition from_graph(Side side, const PreorderGraph& graph);

  Side side() const { return side_; }
  std::size_t num_cells() const { return cells_.size(); }
  /// Sorted by ElementId.
  const std::vector<ElementId>& members(std::size_t cell) const { return cells_[cell]; }
  std::size_t cell_of(ElementId w) const { return cell_of_[w]; }
  /// cell a <= cell b in the condensation order.
  bool leq(std::size_t a, std::size_t b) const { return below_[b][a]; }
  bool less(std::size_t a, std::size_t b) const { return a != b && leq(a, b); }
  bool element_leq(ElementId x, ElementId y) const { return leq(cell_of(x), cell_of(y)); }
  /// Covering pairs (lower, upper) of the transitively reduced condensation.
  const std::vector<std::pair<std::size_t, std::size_t>>& covers() const { return covers_; }

  nlohmann::json to_json(const CoxeterSystem& sys) const;
  std::string to_dot(const CoxeterSystem& sys) const;

 private:
  Side side_ = Side::Left;
  std::vector<std::vector<ElementId>> cells_;
  std::vector<std::size_t> cell_of_;
  std::vector<boost::dynamic_bitset<>> below_;
  std::vector<std::pair<std::size_t, std::size_t>> covers_;
};

CellDecomposition compute_cells(const ValidatedTable& table, Side side);

/// A term of b_s pkl_y (or pkl_y b_s) that lies strictly below the cell.
struct DiscardedTerm {
  Generator s;
  ElementId from;  // y
  ElementId to;    // z
  LaurentPoly coefficient;
};

/// Cell module with basis {pkl_x : x in the cell}.  Matrix entry (i, j) of
/// generator(s) is the coefficient of pkl_{basis[i]} in b_s pkl_{basis[j]}
/// (or in pkl_{basis[j]} b_s when H acts on the right).
class CellModule {
 public:
  Side acting_side() const { return side_; }
  const std::vector<ElementId>& basis() const { return basis_; }
  std::size_t dim() const { return basis_.size(); }
  std::optional<std::size_t> index_of(ElementId w) const;
  const LaurentMatrix& generator(Generator s) const { return generators_[s]; }
  std::size_t rank() const { return generators_.size(); }
  const std::vector<DiscardedTerm>& discarded() const { return discarded_; }

  /// rho(H_w) at v = 1 for every w, indexed by ElementId.  H_s = b_s - v.
  std::vector<IntMatrix> standard_actions_at_one(const CoxeterSystem& sys) const;

  nlohmann::json to_json(const CoxeterSystem& sys) const;

 private:
  friend CellModule build_cell_module(const ValidatedTable&, std::vector<ElementId>, Side);
  Side side_ = Side::Left;
  std::vector<ElementId> basis_;
  std::vector<std::size_t> index_;  // ElementId -> position, or npos
  std::vector<LaurentMatrix> generators_;
  std::vector<DiscardedTerm> discarded_;
};

/// Module on the span of pkl_x for x in basis, taken modulo everything
/// outside it.  acting_side is Left or Right.
CellModule build_cell_module(const ValidatedTable& table, std::vector<ElementId> basis,
                             Side acting_side);
/// Left cell module for a left cell, right cell module for a right cell.
CellModule cell_module(const ValidatedTable& table, const CellDecomposition& cells,
                       std::size_t cell);
/// Left module on a two-sided cell, basis ordered by left cell and then by
/// element order.
CellModule two_sided_module(const ValidatedTable& table, const CellDecomposition& two_sided,
                            const CellDecomposition& left, std::size_t cell);

/// Left cells contained in a two-sided cell, in increasing order.
std::vector<std::size_t> left_cells_in(const CellDecomposition& two_sided,
                                       const CellDecomposition& left, std::size_t cell);

/// Left, right and two-sided decompositions of one table together with the
/// left cell modules and their v = 1 representations (built on demand).
class CellAtlas {
 public:
  explicit CellAtlas(const ValidatedTable& table);

  const ValidatedTable& table() const { return *table_; }
  const CoxeterSystem& system() const { return table_->system(); }
  const CellDecomposition& left() const { return left_; }
  const CellDecomposition& right() const { return right_; }
  const CellDecomposition& two_sided() const { return two_sided_; }
  const CellModule& left_module(std::size_t cell) const { return modules_[cell]; }
  /// rho(H_w) at v = 1 on the left cell module, indexed by ElementId.
  const std::vector<IntMatrix>& rho(std::size_t left_cell) const;
  std::vector<std::size_t> left_cells_in(std::size_t two_sided_cell) const {
    return heckecells::left_cells_in(two_sided_, left_, two_sided_cell);
  }
  std::size_t two_sided_cell_of_left(std::size_t left_cell) const {
    return two_sided_.cell_of(left_.members(left_cell).front());
  }

 private:
  const ValidatedTable* table_;
  CellDecomposition left_, right_, two_sided_;
  std::vector<CellModule> modules_;
  mutable std::mutex mutex_;
  mutable std::vector<std::unique_ptr<const std::vector<IntMatrix>>> rho_;
};

}  // namespace heckecells
