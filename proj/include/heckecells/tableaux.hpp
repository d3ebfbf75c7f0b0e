#pragma once

// Partitions, standard Young tableaux and the Robinson-Schensted
// correspondence for permutations in one-line notation.

#include <compare>
#include <set>
#include <string>
#include <vector>

#include "json.hpp"

namespace heckecells {

/// One-line notation (w(1), ..., w(n)) with values 1..n.
using Permutation = std::vector<int>;

class Partition {
 public:
  Partition() = default;
  /// Trailing zeros are dropped; throws MalformedDocument unless weakly decreasing
  /// and nonnegative.
  explicit Partition(std::vector<int> parts);

  const std::vector<int>& parts() const { return parts_; }
  int size() const;  // n
  int length() const { return static_cast<int>(parts_.size()); }
  /// Part i (0-based); 0 past the end.
  int operator[](int i) const { return i < length() ? parts_[i] : 0; }
  Partition transpose() const;
  std::string to_string() const;  // "(3,1)"

  friend auto operator<=>(const Partition&, const Partition&) = default;

 private:
  std::vector<int> parts_;
};

/// All partitions of n, in decreasing lexicographic order ((n) first).
std::vector<Partition> partitions(int n);
/// Dominance order; throws SizeMismatch for different n.
bool dominance_leq(const Partition& lambda, const Partition& mu);
/// Partitions obtained from mu by moving one box to a higher row.
std::vector<Partition> raising_operations(const Partition& mu);

struct StandardTableau {
  std::vector<std::vector<int>> rows;

  Partition shape() const;
  int size() const;
  bool is_standard() const;
  StandardTableau transpose() const;
  nlohmann::json to_json() const { return rows; }
  /// Young diagram text art, one row per line.
  std::string to_text() const;
  std::string to_string() const { return to_json().dump(); }

  friend auto operator<=>(const StandardTableau&, const StandardTableau&) = default;
};

std::vector<StandardTableau> standard_tableaux(const Partition& shape);
/// Number of standard tableaux of the given shape (hook length formula).
long long count_standard_tableaux(const Partition& shape);

struct RSPair {
  StandardTableau P;  // insertion tableau
  StandardTableau Q;  // recording tableau
};

/// Row insertion of w(1), ..., w(n).
RSPair rs(const Permutation& w);
/// Inverse bumping; throws ShapeMismatch if the shapes differ.
Permutation rs_inverse(const StandardTableau& P, const StandardTableau& Q);

/// Closure of w under elementary Knuth moves.
std::set<Permutation> knuth_class(const Permutation& w);

/// {i : i+1 lies strictly below and weakly left of i}, values in 1..n-1.
std::set<int> tableau_descents(const StandardTableau& T);

StandardTableau evacuation(const StandardTableau& T);

Permutation permutation_inverse(const Permutation& w);
/// (x*y)(j) = x(y(j)).
Permutation permutation_multiply(const Permutation& x, const Permutation& y);
Permutation longest_permutation(int n);
/// Swaps positions i and i+1 (1-based): w * s_i.
Permutation apply_right(Permutation w, int i);

struct ChainWitness {
  Permutation x;
  int s = 0;  // 1-based: s_s swaps positions s and s+1
  Partition nu;
  Permutation xs;
  int construction_case = 0;  // 1 or 2
};

/// For lambda > mu in dominance order, returns x with shape mu, a simple
/// reflection s with xs < x, and nu = shape(xs) with lambda >= nu > mu.
/// Throws NotComparable otherwise.
ChainWitness chain_witness(const Partition& lambda, const Partition& mu);

}  // namespace heckecells
