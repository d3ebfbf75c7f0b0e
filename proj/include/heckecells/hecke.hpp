#pragma once

// The Hecke algebra of a finite Coxeter system over Z[v, v^-1] in its
// standard basis {H_w}, with H_s^2 = (v^-1 - v) H_s + 1, together with the
// bar involution, the anti-involution iota(H_w) = H_{w^-1}, and the
// Kazhdan-Lusztig basis b_w in Soergel's normalisation
//   b_w in H_w + sum_{y < w} v Z[v] H_y,   bar(b_w) = b_w.

#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "json.hpp"

#include "heckecells/coxeter.hpp"
#include "heckecells/laurent.hpp"

namespace heckecells {

class HeckeElement {
 public:
  using Term = std::pair<ElementId, LaurentPoly>;

  HeckeElement() = default;
  static HeckeElement standard(ElementId w, LaurentPoly coefficient = 1);
  /// Drops zero entries of a dense coefficient vector indexed by ElementId.
  static HeckeElement from_dense(std::vector<LaurentPoly> dense);
  std::vector<LaurentPoly> to_dense(std::size_t system_size) const;

  /// Sorted by ElementId, no zero coefficients.
  std::span<const Term> terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  std::size_t size() const noexcept { return terms_.size(); }
  LaurentPoly coefficient(ElementId w) const;
  /// Largest ElementId in the support (a maximal element in length order).
  ElementId top() const { return terms_.back().first; }

  HeckeElement& operator+=(const HeckeElement& other);
  HeckeElement& operator-=(const HeckeElement& other);
  HeckeElement& operator*=(const LaurentPoly& scalar);
  friend HeckeElement operator+(HeckeElement a, const HeckeElement& b) { return a += b; }
  friend HeckeElement operator-(HeckeElement a, const HeckeElement& b) { return a -= b; }
  friend HeckeElement operator*(const LaurentPoly& s, HeckeElement a) { return a *= s; }
  friend bool operator==(const HeckeElement&, const HeckeElement&) = default;

  /// Coefficientwise bar of the coefficients only (not the algebra involution).
  HeckeElement bar_coefficients() const;

 private:
  void merge(const HeckeElement& other, int sign);
  std::vector<Term> terms_;
};

// Dense scratch form used by the hot loops: index = ElementId.
using DenseHecke = std::vector<LaurentPoly>;

/// out = H_s * in (dense, in-place safe: returns a new vector).
DenseHecke left_mult_standard(const CoxeterSystem& sys, Generator s, const DenseHecke& in);
DenseHecke right_mult_standard(const CoxeterSystem& sys, const DenseHecke& in, Generator s);
/// b_s * h and h * b_s, where b_s = H_s + v.
DenseHecke left_mult_kl_generator(const CoxeterSystem& sys, Generator s, const DenseHecke& in);
DenseHecke right_mult_kl_generator(const CoxeterSystem& sys, const DenseHecke& in, Generator s);

HeckeElement std_multiply(const CoxeterSystem& sys, const HeckeElement& a,
                          const HeckeElement& b);
HeckeElement iota(const CoxeterSystem& sys, const HeckeElement& h);

/// Bar involution with a cache of bar(H_x) = H_{x^-1}^{-1}.
class BarInvolution {
 public:
  explicit BarInvolution(const CoxeterSystem& sys) : sys_(&sys), cache_(sys.size()) {}

  const HeckeElement& of_standard(ElementId x) const;
  HeckeElement operator()(const HeckeElement& h) const;

 private:
  const CoxeterSystem* sys_;
  mutable std::recursive_mutex mutex_;
  mutable std::vector<std::optional<HeckeElement>> cache_;
};

/// Kazhdan-Lusztig basis.  Elements are computed on first request and
/// memoised for the lifetime of the table; concurrent readers are safe.
class KLBasis {
 public:
  explicit KLBasis(const CoxeterSystem& sys);

  const CoxeterSystem& system() const { return *sys_; }

  /// b_w in the standard basis.
  const HeckeElement& element(ElementId w) const;
  /// h_{y,w}: coefficient of H_y in b_w.
  LaurentPoly h(ElementId y, ElementId w) const { return element(w).coefficient(y); }
  /// Coefficient of v^1 in h_{y,w}.
  Integer mu(ElementId y, ElementId w) const;

  /// Force the whole table; progress(done, total) is called per element.
  void compute_all(const std::function<void(std::size_t, std::size_t)>& progress = {}) const;

  nlohmann::json element_report(ElementId w) const;
  nlohmann::json report() const;

 private:
  void ensure(ElementId w) const;

  const CoxeterSystem* sys_;
  mutable std::recursive_mutex mutex_;
  mutable std::vector<std::unique_ptr<const HeckeElement>> table_;
};

nlohmann::json hecke_element_to_json(const CoxeterSystem& sys, const HeckeElement& h);

}  // namespace heckecells
