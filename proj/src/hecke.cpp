#include "heckecells/hecke.hpp"

#include <algorithm>

namespace heckecells {

HeckeElement HeckeElement::standard(ElementId w, LaurentPoly coefficient) {
  HeckeElement h;
  if (!coefficient.is_zero()) h.terms_.emplace_back(w, std::move(coefficient));
  return h;
}

HeckeElement HeckeElement::from_dense(std::vector<LaurentPoly> dense) {
  HeckeElement h;
  for (std::size_t w = 0; w < dense.size(); ++w) {
    if (!dense[w].is_zero()) {
      h.terms_.emplace_back(static_cast<ElementId>(w), std::move(dense[w]));
    }
  }
  return h;
}

std::vector<LaurentPoly> HeckeElement::to_dense(std::size_t system_size) const {
  std::vector<LaurentPoly> dense(system_size);
  for (const auto& [w, c] : terms_) dense[w] = c;
  return dense;
}

LaurentPoly HeckeElement::coefficient(ElementId w) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), w,
                             [](const Term& t, ElementId x) { return t.first < x; });
  if (it != terms_.end() && it->first == w) return it->second;
  return {};
}

void HeckeElement::merge(const HeckeElement& other, int sign) {
  std::vector<Term> out;
  out.reserve(terms_.size() + other.terms_.size());
  auto a = terms_.begin();
  auto b = other.terms_.begin();
  while (a != terms_.end() || b != other.terms_.end()) {
    if (b == other.terms_.end() || (a != terms_.end() && a->first < b->first)) {
      out.push_back(std::move(*a++));
    } else if (a == terms_.end() || b->first < a->first) {
      out.emplace_back(b->first, sign > 0 ? b->second : -b->second);
      ++b;
    } else {
      LaurentPoly c = std::move(a->second);
      c.add_scaled(b->second, sign);
      if (!c.is_zero()) out.emplace_back(a->first, std::move(c));
      ++a;
      ++b;
    }
  }
  terms_ = std::move(out);
}

HeckeElement& HeckeElement::operator+=(const HeckeElement& other) {
  merge(other, 1);
  return *this;
}

HeckeElement& HeckeElement::operator-=(const HeckeElement& other) {
  merge(other, -1);
  return *this;
}

HeckeElement& HeckeElement::operator*=(const LaurentPoly& scalar) {
  std::vector<Term> out;
  for (auto& [w, c] : terms_) {
    LaurentPoly p = c * scalar;
    if (!p.is_zero()) out.emplace_back(w, std::move(p));
  }
  terms_ = std::move(out);
  return *this;
}

HeckeElement HeckeElement::bar_coefficients() const {
  HeckeElement h = *this;
  for (auto& [w, c] : h.terms_) c = c.bar();
  return h;
}

namespace {

const LaurentPoly& quadratic_coefficient() {
  static const LaurentPoly q = LaurentPoly::v(-1) - LaurentPoly::v(1);
  return q;
}

}  // namespace

DenseHecke left_mult_standard(const CoxeterSystem& sys, Generator s, const DenseHecke& in) {
  DenseHecke out(in.size());
  for (std::size_t x = 0; x < in.size(); ++x) {
    if (in[x].is_zero()) continue;
    const ElementId sx = sys.left_mult(s, static_cast<ElementId>(x));
    out[sx] += in[x];
    if (sys.is_left_descent(s, static_cast<ElementId>(x))) {
      out[x] += in[x] * quadratic_coefficient();
    }
  }
  return out;
}

DenseHecke right_mult_standard(const CoxeterSystem& sys, const DenseHecke& in, Generator s) {
  DenseHecke out(in.size());
  for (std::size_t x = 0; x < in.size(); ++x) {
    if (in[x].is_zero()) continue;
    const ElementId xs = sys.right_mult(static_cast<ElementId>(x), s);
    out[xs] += in[x];
    if (sys.is_right_descent(static_cast<ElementId>(x), s)) {
      out[x] += in[x] * quadratic_coefficient();
    }
  }
  return out;
}

DenseHecke left_mult_kl_generator(const CoxeterSystem& sys, Generator s, const DenseHecke& in) {
  DenseHecke out = left_mult_standard(sys, s, in);
  for (std::size_t x = 0; x < in.size(); ++x) {
    if (!in[x].is_zero()) out[x].add_scaled(in[x], 1, 1);
  }
  return out;
}

DenseHecke right_mult_kl_generator(const CoxeterSystem& sys, const DenseHecke& in, Generator s) {
  DenseHecke out = right_mult_standard(sys, in, s);
  for (std::size_t x = 0; x < in.size(); ++x) {
    if (!in[x].is_zero()) out[x].add_scaled(in[x], 1, 1);
  }
  return out;
}

HeckeElement std_multiply(const CoxeterSystem& sys, const HeckeElement& a,
                          const HeckeElement& b) {
  const DenseHecke right = b.to_dense(sys.size());
  DenseHecke total(sys.size());
  for (const auto& [x, coeff] : a.terms()) {
    // H_x * b = H_{s_1}(H_{s_2}(... H_{s_k} b)).
    DenseHecke cur = right;
    const auto& word = sys.word(x);
    for (auto it = word.rbegin(); it != word.rend(); ++it) {
      cur = left_mult_standard(sys, *it, cur);
    }
    for (std::size_t z = 0; z < cur.size(); ++z) {
      if (!cur[z].is_zero()) total[z] += coeff * cur[z];
    }
  }
  return HeckeElement::from_dense(std::move(total));
}

HeckeElement iota(const CoxeterSystem& sys, const HeckeElement& h) {
  DenseHecke out(sys.size());
  for (const auto& [x, c] : h.terms()) out[sys.inverse(x)] = c;
  return HeckeElement::from_dense(std::move(out));
}

const HeckeElement& BarInvolution::of_standard(ElementId x) const {
  std::lock_guard lock(mutex_);
  if (cache_[x]) return *cache_[x];
  const CoxeterSystem& sys = *sys_;
  if (x == sys.identity()) {
    cache_[x] = HeckeElement::standard(x);
    return *cache_[x];
  }
  // bar(H_x) = bar(H_s) bar(H_{sx}) with bar(H_s) = H_s + (v - v^-1).
  const Generator s = sys.word(x).front();
  const ElementId u = sys.left_mult(s, x);
  const DenseHecke tail = of_standard(u).to_dense(sys.size());
  DenseHecke out = left_mult_standard(sys, s, tail);
  const LaurentPoly shift = LaurentPoly::v(1) - LaurentPoly::v(-1);
  for (std::size_t z = 0; z < tail.size(); ++z) {
    if (!tail[z].is_zero()) out[z] += shift * tail[z];
  }
  cache_[x] = HeckeElement::from_dense(std::move(out));
  return *cache_[x];
}

HeckeElement BarInvolution::operator()(const HeckeElement& h) const {
  DenseHecke total(sys_->size());
  for (const auto& [x, c] : h.terms()) {
    const LaurentPoly cb = c.bar();
    for (const auto& [z, d] : of_standard(x).terms()) total[z] += cb * d;
  }
  return HeckeElement::from_dense(std::move(total));
}

KLBasis::KLBasis(const CoxeterSystem& sys) : sys_(&sys), table_(sys.size()) {}

void KLBasis::ensure(ElementId w) const {
  if (table_[w]) return;
  const CoxeterSystem& sys = *sys_;
  if (w == sys.identity()) {
    table_[w] = std::make_unique<const HeckeElement>(HeckeElement::standard(w));
    return;
  }
  // b_w = b_s b_{sw} - sum_{y < sw, sy < y} mu(y, sw) b_y for s in L(w).
  const Generator s = sys.word(w).front();
  const ElementId u = sys.left_mult(s, w);
  ensure(u);
  const HeckeElement& bu = *table_[u];
  DenseHecke prod = left_mult_kl_generator(sys, s, bu.to_dense(sys.size()));
  for (const auto& [y, hy] : bu.terms()) {
    if (y == u || !sys.is_left_descent(s, y)) continue;
    const Integer m = hy.coefficient(1);
    if (m == 0) continue;
    ensure(y);
    for (const auto& [z, hz] : table_[y]->terms()) prod[z].add_scaled(hz, -m);
  }
  table_[w] = std::make_unique<const HeckeElement>(HeckeElement::from_dense(std::move(prod)));
}

const HeckeElement& KLBasis::element(ElementId w) const {
  std::lock_guard lock(mutex_);
  ensure(w);
  return *table_[w];
}

Integer KLBasis::mu(ElementId y, ElementId w) const {
  if (y == w) return 0;
  return h(y, w).coefficient(1);
}

void KLBasis::compute_all(const std::function<void(std::size_t, std::size_t)>& progress) const {
  const std::size_t n = sys_->size();
  for (std::size_t w = 0; w < n; ++w) {
    element(static_cast<ElementId>(w));
    if (progress) progress(w + 1, n);
  }
}

nlohmann::json hecke_element_to_json(const CoxeterSystem& sys, const HeckeElement& h) {
  nlohmann::json out = nlohmann::json::object();
  for (const auto& [x, c] : h.terms()) out[sys.element_name(x)] = c.to_string();
  return out;
}

nlohmann::json KLBasis::element_report(ElementId w) const {
  return {{"w", sys_->element_name(w)},
          {"expansion", hecke_element_to_json(*sys_, element(w))}};
}

nlohmann::json KLBasis::report() const {
  nlohmann::json elements = nlohmann::json::array();
  for (std::size_t w = 0; w < sys_->size(); ++w) {
    elements.push_back(element_report(static_cast<ElementId>(w)));
  }
  return {{"system", sys_->name()}, {"size", sys_->size()}, {"basis", elements}};
}

}  // namespace heckecells
