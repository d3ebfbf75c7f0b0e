#pragma once

// Perron-Frobenius analysis of cell modules after specializing v to 1.
//
// Two sums of the p-canonical basis are in play.  The full element
// a_c = sum_{w in W} c_w pkl_w gives pa_c(C), L_C and the families; the sum
// restricted to a two-sided cell J gives M_{c,C}, N and the idempotent e_J.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <boost/multiprecision/cpp_int.hpp>

#include "json.hpp"

#include "heckecells/cells.hpp"
#include "heckecells/tableaux.hpp"

namespace heckecells {

using Rational = boost::multiprecision::cpp_rational;

/// Positive rational weights c_w, indexed by ElementId.
class WeightVector {
 public:
  static WeightVector uniform(std::size_t n);
  /// Weights k/64 with k uniform in [16, 256], from mt19937_64(seed).
  static WeightVector random(std::size_t n, std::uint64_t seed);
  /// {"default": 1, "weights": {"121": 2, "2": "3/2"}}; values are integers
  /// or "a/b" strings.
  static WeightVector from_json(const nlohmann::json& doc, const CoxeterSystem& sys);
  /// "uniform", "random:<seed>" or a path to a JSON file.
  static WeightVector parse(const std::string& spec, const CoxeterSystem& sys);

  std::size_t size() const { return w_.size(); }
  const Rational& operator[](ElementId w) const { return w_[w]; }
  void set(ElementId w, const Rational& c);
  /// Common denominator of all weights.
  Integer denominator() const;
  std::string label() const { return label_; }

 private:
  std::vector<Rational> w_;
  std::string label_ = "uniform";
};

/// Exact matrix numerator / denominator.
struct SpecializedAction {
  IntMatrix numerator;
  Integer denominator = 1;
  Eigen::MatrixXd value() const;
  bool is_integral() const { return denominator == 1; }
};

/// alpha_y = sum_{w in elements} c_w ph_{y,w}(1), so that the element
/// sum_w c_w pkl_w at v = 1 equals sum_y alpha_y H_y.  Returned scaled by the
/// weights' common denominator.
std::vector<Integer> standard_coefficients(const ValidatedTable& table,
                                           const WeightVector& weights,
                                           const std::vector<ElementId>& elements);

/// Matrix of sum_y alpha_y rho(y) on a module with v = 1 actions rho.
SpecializedAction act(const std::vector<IntMatrix>& rho, const std::vector<Integer>& alpha,
                      const Integer& denominator);

/// M_{c,C}: sum over the two-sided cell J of C of c_w pkl_w acting on M(C).
SpecializedAction specialize_action(const CellAtlas& atlas, std::size_t left_cell,
                                    const WeightVector& weights);
/// The same with the full sum over W.
SpecializedAction specialize_full_action(const CellAtlas& atlas, std::size_t left_cell,
                                         const WeightVector& weights);

struct PerronOptions {
  double residual_tol = 1e-13;
  long max_iterations = 1'000'000;
  double crosscheck_tol = 1e-9;
  std::size_t crosscheck_max_dim = 200;
  double zero_tol = 1e-9;
  /// Second largest isotypic norm over the largest must stay below this.
  double projection_tol = 1e-6;
  /// e_J^2 = e_J is checked in the quotient only up to this group order.
  std::size_t idempotent_max_order = 120;
};

struct PerronData {
  double lambda = 0;
  Eigen::VectorXd right;  // v, positive, sum 1
  Eigen::VectorXd left;   // v^, positive, v^T v = 1
  Eigen::MatrixXd projector;
  long iterations = 0;
  double residual = 0;
  double dense_lambda = 0;  // 0 when the cross-check was skipped
};

PerronData pf_analyze(const Eigen::MatrixXd& m, const PerronOptions& opts = {});

/// PF analysis of one left cell.
struct CellPerron {
  std::size_t cell = 0;
  SpecializedAction restricted;  // M_{c,C}
  PerronData data;               // of M_{c,C}
  double full_lambda = 0;        // pa_c(C), full sum
};

CellPerron analyze_cell(const CellAtlas& atlas, std::size_t left_cell,
                        const WeightVector& weights, const PerronOptions& opts = {});

struct IdempotentReport {
  std::size_t cell = 0;  // two-sided
  std::vector<ElementId> basis;  // ordered by left cell
  std::vector<std::size_t> left_cell_of;  // per basis position
  SpecializedAction N;
  Eigen::MatrixXd NJ;
  double lambda = 0;
  std::vector<double> d;
  long iterations = 0;
  bool d_positive = false;
  double block_residual = 0;
  double limit_mismatch = 0;  // |N_J c/lambda - d|
  std::optional<double> idempotency_residual;  // unset when skipped
  bool passed(double tol = 1e-9) const;
  nlohmann::json to_json(const CoxeterSystem& sys) const;
};

IdempotentReport ej_idempotent(const CellAtlas& atlas, std::size_t two_sided_cell,
                               const WeightVector& weights, const PerronOptions& opts = {});

struct ApexResult {
  std::size_t apex = 0;
  std::vector<std::size_t> acting;  // two-sided cells with some pkl_x acting nonzero
  bool is_own_cell = false;
};

ApexResult apex(const CellAtlas& atlas, std::size_t left_cell);

class CharacterTable {
 public:
  const std::vector<std::string>& names() const { return names_; }
  std::size_t size() const { return names_.size(); }
  int dim(std::size_t irr) const { return static_cast<int>(values_[irr][0]); }
  std::size_t num_classes() const { return reps_.size(); }
  ElementId class_rep(std::size_t k) const { return reps_[k]; }
  std::size_t class_size(std::size_t k) const { return sizes_[k]; }
  std::size_t class_of(ElementId w) const { return class_of_[w]; }
  long long value(std::size_t irr, std::size_t k) const { return values_[irr][k]; }
  std::size_t index(const std::string& name) const;
  std::size_t group_order() const { return class_of_.size(); }
  /// (1/|W|) sum_w a(w) b(w) for class functions given per class.
  double inner(const std::vector<double>& a, const std::vector<double>& b) const;
  /// Largest deviation of the Gram matrix from the identity.
  double orthonormality_defect() const;

 private:
  friend CharacterTable irreducible_characters(const CoxeterSystem& sys);
  std::vector<std::string> names_;
  std::vector<ElementId> reps_;  // identity first
  std::vector<std::size_t> sizes_;
  std::vector<std::size_t> class_of_;
  std::vector<std::vector<long long>> values_;
};

/// Type A_{n-1} with n <= 8 (labels are partitions, (n) is trivial) and B2.
CharacterTable irreducible_characters(const CoxeterSystem& sys);

/// chi^lambda on the class of cycle type mu, by Murnaghan-Nakayama.
long long mn_character(const Partition& lambda, const Partition& mu);

/// [M : L] for every irreducible L, from rho at v = 1.
std::vector<int> multiplicities(const CharacterTable& chars, const std::vector<IntMatrix>& rho);

struct SpecialModule {
  std::size_t cell = 0;
  std::size_t irreducible = 0;
  std::string name;
  double lambda = 0;  // pa_c(C)
  std::vector<int> multiplicities;
  std::vector<double> projection_norms;  // per irreducible, 0 if absent
};

SpecialModule special_module(const CellAtlas& atlas, const CharacterTable& chars,
                             std::size_t left_cell, const WeightVector& weights,
                             const PerronOptions& opts = {});

/// Per two-sided cell, the irreducibles occurring in its left cell modules.
/// Throws NotAPartition unless every irreducible occurs for exactly one cell.
std::vector<std::vector<std::size_t>> families(const CellAtlas& atlas,
                                               const CharacterTable& chars);

struct ConjectureReport {
  struct Pair {
    std::size_t lower, upper;  // lower <=_2 upper
    double a_lower, a_upper;
    bool holds;
  };
  std::vector<double> cell_value;  // per two-sided cell (from its first left cell)
  std::vector<double> left_value;  // per left cell
  double constancy_defect = 0;     // relative spread inside two-sided cells
  std::vector<Pair> pairs;
  /// Left cells whose L_C changed under some alternative weights; empty when
  /// invariance was not checked.
  std::optional<std::vector<std::size_t>> lc_changes;
  bool constant(double tol = 1e-9) const { return constancy_defect <= tol; }
  bool monotone() const;
  bool passed(double tol = 1e-9) const;
  nlohmann::json to_json(const CoxeterSystem& sys, const CellAtlas& atlas) const;
};

ConjectureReport conjecture_check(const CellAtlas& atlas, const WeightVector& weights,
                                  const PerronOptions& opts = {},
                                  const CharacterTable* chars = nullptr,
                                  const std::vector<WeightVector>& alternatives = {});

/// Everything above for one table, as written by the CLI.
struct PerronReport {
  std::vector<CellPerron> cells;
  std::vector<IdempotentReport> idempotents;
  std::vector<std::optional<SpecialModule>> special;  // per left cell
  std::vector<std::vector<std::size_t>> families;     // empty without characters
  std::vector<std::string> irreducible_names;
  nlohmann::json to_json(const CellAtlas& atlas) const;
  std::string to_csv(const CellAtlas& atlas) const;
  bool passed(double tol = 1e-9) const;
};

PerronReport perron_report(const CellAtlas& atlas, const WeightVector& weights,
                           const PerronOptions& opts = {}, unsigned jobs = 1);

}  // namespace heckecells
