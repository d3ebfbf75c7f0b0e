#include "heckecells/cellular.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "heckecells/error.hpp"

namespace heckecells {

namespace {

Verdict fail(Verdict v, std::string detail, nlohmann::json witness) {
  v.passed = false;
  v.detail = std::move(detail);
  v.witness = std::move(witness);
  return v;
}

// The left cell column b_s pkl_x restricted to one shape: S' -> coefficient.
using Column = std::map<std::size_t, LaurentPoly>;

nlohmann::json column_json(const Column& c, const std::vector<StandardTableau>& m) {
  nlohmann::json out = nlohmann::json::object();
  for (const auto& [S, coeff] : c) out[m[S].to_string()] = coeff.to_string();
  return out;
}

std::map<ElementId, Partition> shape_labels(const CellAtlas& atlas) {
  std::map<ElementId, Partition> out;
  for (ElementId w = 0; w < atlas.system().size(); ++w) {
    out.emplace(w, rs(atlas.system().one_line(w)).P.shape());
  }
  return out;
}

}  // namespace

bool VerificationReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const Verdict& v) { return v.passed; });
}

nlohmann::json VerificationReport::to_json() const {
  nlohmann::json cs = nlohmann::json::array();
  for (const auto& v : checks) {
    cs.push_back({{"name", v.name}, {"passed", v.passed}, {"detail", v.detail},
                  {"witness", v.witness}});
  }
  nlohmann::json out = {{"title", title}, {"passed", passed()}, {"checks", cs}};
  if (!note.empty()) out["note"] = note;
  if (!data.is_null()) out["data"] = data;
  return out;
}

// ---- datum

bool CellDatum::below(std::size_t mu, std::size_t lambda) const {
  return mu != lambda && dominance_leq(shapes_[mu], shapes_[lambda]);
}

std::vector<ElementId> CellDatum::lower_span(std::size_t shape) const {
  std::vector<ElementId> out;
  for (ElementId w = 0; w < label_.size(); ++w) {
    if (below(label_[w].shape, shape)) out.push_back(w);
  }
  return out;
}

void CellDatum::swap_images(ElementId a, ElementId b) {
  std::swap(label_[a], label_[b]);
  image_[label_[a].shape][label_[a].S][label_[a].T] = a;
  image_[label_[b].shape][label_[b].S][label_[b].T] = b;
}

nlohmann::json CellDatum::to_json() const {
  nlohmann::json lambda = nlohmann::json::array();
  for (std::size_t l = 0; l < shapes_.size(); ++l) {
    nlohmann::json ts = nlohmann::json::array();
    for (const auto& t : tableaux_[l]) ts.push_back(t.to_string());
    lambda.push_back({{"shape", shapes_[l].to_string()}, {"tableaux", ts}});
  }
  nlohmann::json c = nlohmann::json::array();
  for (ElementId w = 0; w < label_.size(); ++w) {
    const auto& lb = label_[w];
    c.push_back({{"element", system().element_name(w)},
                 {"shape", shapes_[lb.shape].to_string()},
                 {"S", tableaux_[lb.shape][lb.S].to_string()},
                 {"T", tableaux_[lb.shape][lb.T].to_string()}});
  }
  return {{"n", n_}, {"star", "iota"}, {"Lambda", lambda}, {"C", c}};
}

CellDatum build_cell_datum(const ValidatedTable& table) {
  const CoxeterSystem& sys = table.system();
  if (!sys.is_type_a()) {
    throw Error(ErrorKind::UnsupportedType,
                "the cell datum is defined for symmetric groups, not " + sys.type().to_string());
  }
  CellDatum d;
  d.table_ = &table;
  d.n_ = sys.rank() + 1;
  d.shapes_ = partitions(d.n_);
  std::map<Partition, std::size_t> shape_index;
  for (std::size_t l = 0; l < d.shapes_.size(); ++l) {
    shape_index[d.shapes_[l]] = l;
    d.tableaux_.push_back(standard_tableaux(d.shapes_[l]));
    const std::size_t f = d.tableaux_.back().size();
    d.image_.emplace_back(f, std::vector<ElementId>(f, sys.size()));
  }
  d.label_.resize(sys.size());
  for (ElementId w = 0; w < sys.size(); ++w) {
    const auto [P, Q] = rs(sys.one_line(w));
    const std::size_t l = shape_index.at(P.shape());
    const auto& m = d.tableaux_[l];
    const std::size_t S = std::find(m.begin(), m.end(), P) - m.begin();
    const std::size_t T = std::find(m.begin(), m.end(), Q) - m.begin();
    d.label_[w] = {l, S, T};
    d.image_[l][S][T] = w;
  }
  return d;
}

// ---- RS cross-check

void rs_cross_check(const CellAtlas& atlas) {
  const CoxeterSystem& sys = atlas.system();
  if (!sys.is_type_a()) throw Error(ErrorKind::UnsupportedType, "RS needs type A");
  std::vector<RSPair> pairs;
  for (ElementId w = 0; w < sys.size(); ++w) pairs.push_back(rs(sys.one_line(w)));
  auto check = [&](const CellDecomposition& d, auto key, const char* what) {
    std::map<std::decay_t<decltype(key(pairs[0]))>, std::size_t> cell_of_key;
    for (ElementId w = 0; w < sys.size(); ++w) {
      auto [it, fresh] = cell_of_key.emplace(key(pairs[w]), d.cell_of(w));
      if (!fresh && it->second != d.cell_of(w)) {
        throw Error(ErrorKind::CellMismatch,
                    std::string(what) + " splits an RS fiber at " + sys.element_name(w));
      }
    }
    if (cell_of_key.size() != d.num_cells()) {
      throw Error(ErrorKind::CellMismatch, std::string(what) + " merges RS fibers");
    }
  };
  check(atlas.left(), [](const RSPair& p) { return p.Q; }, "left cells");
  check(atlas.right(), [](const RSPair& p) { return p.P; }, "right cells");
  check(atlas.two_sided(), [](const RSPair& p) { return p.P.shape(); }, "two-sided cells");
}

// ---- axioms

VerificationReport verify_axioms(const CellDatum& datum, const CellAtlas& atlas) {
  const CoxeterSystem& sys = datum.system();
  const ValidatedTable& table = datum.table();
  VerificationReport rep;
  rep.title = "cell datum axioms, S" + std::to_string(datum.n()) + ", p = " +
              std::to_string(table.p());
  rep.note =
      "Axiom (iii) is checked for a = b_s. These generate the algebra, and the condition is "
      "closed under sums and products, so this covers every a.";

  // (i)
  {
    Verdict v{"(i) C is a bijection onto the basis"};
    std::set<ElementId> seen;
    std::size_t count = 0;
    for (std::size_t l = 0; l < datum.shapes().size(); ++l) {
      const std::size_t f = datum.tableaux(l).size();
      if (static_cast<long long>(f) != count_standard_tableaux(datum.shapes()[l])) {
        v = fail(v, "wrong number of tableaux", {{"shape", datum.shapes()[l].to_string()}});
      }
      for (std::size_t S = 0; S < f; ++S) {
        for (std::size_t T = 0; T < f; ++T) {
          ++count;
          const ElementId w = datum.element(l, S, T);
          if (w >= sys.size() || !seen.insert(w).second) {
            v = fail(v, "C is not injective",
                     {{"shape", datum.shapes()[l].to_string()},
                      {"S", datum.tableaux(l)[S].to_string()},
                      {"T", datum.tableaux(l)[T].to_string()}});
          }
        }
      }
    }
    if (v.passed && (count != sys.size() || seen.size() != sys.size())) {
      v = fail(v, "C does not hit every basis element", {{"pairs", count}, {"size", sys.size()}});
    }
    rep.checks.push_back(v);
  }

  // (ii)
  {
    Verdict v{"(ii) iota(C_{S,T}) = C_{T,S}"};
    for (ElementId x = 0; x < sys.size() && v.passed; ++x) {
      if (!(iota(sys, table.std_expansion(x)) == table.std_expansion(sys.inverse(x)))) {
        v = fail(v, "iota(pkl_x) != pkl_{x^-1}", {{"x", sys.element_name(x)}});
      }
      const auto& lb = datum.label(x);
      if (v.passed && datum.element(lb.shape, lb.T, lb.S) != sys.inverse(x)) {
        v = fail(v, "C_{T,S} is not the inverse of C_{S,T}", {{"x", sys.element_name(x)}});
      }
    }
    rep.checks.push_back(v);
  }

  // (iii) on generators, plus the r_s tables.
  Verdict iii{"(iii) b_s C_{S,T} mod A(<lambda) is independent of T"};
  Verdict mult{"b_s pkl_x = (v + v^-1) pkl_x for s in L(x), else support has s in L"};
  nlohmann::json tables = nlohmann::json::object();
  const LaurentPoly quantum_two = LaurentPoly::v(1) + LaurentPoly::v(-1);
  for (std::size_t l = 0; l < datum.shapes().size(); ++l) {
    const auto& m = datum.tableaux(l);
    const std::size_t f = m.size();
    nlohmann::json per_s = nlohmann::json::object();
    for (Generator s = 0; s < sys.rank(); ++s) {
      std::vector<Column> ref(f);
      for (std::size_t T = 0; T < f; ++T) {
        for (std::size_t S = 0; S < f; ++S) {
          const ElementId x = datum.element(l, S, T);
          const auto& prod = table.left_generator_product(s, x);
          if (sys.is_left_descent(s, x) && mult.passed &&
              !(prod == HeckeElement::standard(x, quantum_two))) {
            mult = fail(mult, "s in L(x) but b_s pkl_x is not (v + v^-1) pkl_x",
                        {{"s", s + 1}, {"x", sys.element_name(x)}});
          }
          Column col;
          for (const auto& [z, c] : prod.terms()) {
            const auto& lz = datum.label(z);
            if (datum.below(lz.shape, l)) continue;
            if (lz.shape != l || lz.T != T) {
              if (iii.passed) {
                iii = fail(iii, "a term of b_s C_{S,T} lies outside A(<lambda) + span C_{*,T}",
                           {{"shape", datum.shapes()[l].to_string()},
                            {"s", s + 1},
                            {"S", m[S].to_string()},
                            {"T", m[T].to_string()},
                            {"term", sys.element_name(z)},
                            {"term_shape", datum.shapes()[lz.shape].to_string()},
                            {"coefficient", c.to_string()}});
              }
              continue;
            }
            col[lz.S] = c;
            if (!sys.is_left_descent(s, x) && !sys.is_left_descent(s, z) && mult.passed) {
              mult = fail(mult, "term y with s not in L(y)",
                          {{"s", s + 1}, {"x", sys.element_name(x)}, {"y", sys.element_name(z)}});
            }
          }
          if (T == 0) {
            ref[S] = col;
          } else if (col != ref[S] && iii.passed) {
            iii = fail(iii, "r_s(S', S) depends on T",
                       {{"shape", datum.shapes()[l].to_string()},
                        {"s", s + 1},
                        {"S", m[S].to_string()},
                        {"T", m[T].to_string()},
                        {"T_ref", m[0].to_string()},
                        {"column", column_json(col, m)},
                        {"column_ref", column_json(ref[S], m)}});
          }
        }
      }
      nlohmann::json r = nlohmann::json::array();
      for (std::size_t S = 0; S < f; ++S) {
        for (const auto& [S2, c] : ref[S]) {
          r.push_back({{"S'", m[S2].to_string()}, {"S", m[S].to_string()},
                       {"r", c.to_string()}});
        }
      }
      per_s[std::to_string(s + 1)] = r;
    }
    tables[datum.shapes()[l].to_string()] = per_s;
  }
  rep.checks.push_back(iii);
  rep.checks.push_back(mult);
  rep.data = {{"r", tables}};

  // A(<lambda) against the computed two-sided order.
  {
    Verdict v{"A(<lambda) is spanned by the two-sided cells below J_lambda"};
    const auto& two = atlas.two_sided();
    for (std::size_t l = 0; l < datum.shapes().size() && v.passed; ++l) {
      const std::size_t J = two.cell_of(datum.element(l, 0, 0));
      std::vector<ElementId> cells_below;
      for (ElementId w = 0; w < sys.size(); ++w) {
        if (two.less(two.cell_of(w), J)) cells_below.push_back(w);
      }
      if (cells_below != datum.lower_span(l)) {
        v = fail(v, "span mismatch", {{"shape", datum.shapes()[l].to_string()}});
      }
    }
    rep.checks.push_back(v);
  }
  return rep;
}

// ---- Property A

VerificationReport verify_property_a(const CellDecomposition& left,
                                     const CellDecomposition& right,
                                     const CellDecomposition& two_sided) {
  VerificationReport rep;
  rep.title = "Property A";
  for (const CellDecomposition* d : {&left, &right}) {
    Verdict v{to_string(d->side()) + " cells inside a two-sided cell are incomparable"};
    nlohmann::json pairs = nlohmann::json::array();
    for (std::size_t J = 0; J < two_sided.num_cells(); ++J) {
      std::set<std::size_t> inside;
      for (ElementId w : two_sided.members(J)) inside.insert(d->cell_of(w));
      for (std::size_t a : inside) {
        for (std::size_t b : inside) {
          if (d->less(a, b)) {
            pairs.push_back({{"two_sided_cell", J}, {"lower", a}, {"upper", b},
                             {"lower_element", d->members(a).front()},
                             {"upper_element", d->members(b).front()}});
          }
        }
      }
    }
    if (!pairs.empty()) v = fail(v, "comparable cells in one two-sided cell", pairs);
    rep.checks.push_back(v);
  }
  return rep;
}

VerificationReport verify_property_a(const CellAtlas& atlas) {
  return verify_property_a(atlas.left(), atlas.right(), atlas.two_sided());
}

// ---- orders

VerificationReport verify_orders(const CellAtlas& atlas) {
  rs_cross_check(atlas);
  const auto& two = atlas.two_sided();
  const auto shapes = shape_labels(atlas);
  VerificationReport rep;
  rep.title = "two-sided cell order = dominance order";
  std::vector<Partition> label(two.num_cells());
  for (std::size_t J = 0; J < two.num_cells(); ++J) label[J] = shapes.at(two.members(J).front());
  Verdict v{"J <=_2 J' iff lambda <= lambda'"};
  nlohmann::json bad = nlohmann::json::array();
  std::size_t compared = 0;
  for (std::size_t a = 0; a < two.num_cells(); ++a) {
    for (std::size_t b = 0; b < two.num_cells(); ++b) {
      ++compared;
      const bool cells = two.leq(a, b), dom = dominance_leq(label[a], label[b]);
      if (cells != dom) {
        bad.push_back({{"lower", label[a].to_string()}, {"upper", label[b].to_string()},
                       {"cells", cells}, {"dominance", dom}});
      }
    }
  }
  if (!bad.empty()) v = fail(v, "orders disagree", bad);
  v.detail = v.passed ? std::to_string(compared) + " pairs agree" : v.detail;
  rep.checks.push_back(v);
  return rep;
}

// ---- structure coefficients

VerificationReport struct_coeff_independence(const CellAtlas& atlas) {
  rs_cross_check(atlas);
  const CoxeterSystem& sys = atlas.system();
  const ValidatedTable& table = atlas.table();
  std::vector<StandardTableau> P;
  for (ElementId w = 0; w < sys.size(); ++w) P.push_back(rs(sys.one_line(w)).P);
  VerificationReport rep;
  rep.title = "p mu^y_{s,x} depends only on (s, P(x), P(y))";
  Verdict v{"independence of the Q-symbols"};
  using Key = std::tuple<Generator, StandardTableau, StandardTableau>;
  std::map<Key, std::pair<LaurentPoly, std::pair<ElementId, ElementId>>> seen;
  std::size_t quadruples = 0;
  for (std::size_t c = 0; c < atlas.left().num_cells() && v.passed; ++c) {
    const auto& members = atlas.left().members(c);
    for (Generator s = 0; s < sys.rank() && v.passed; ++s) {
      for (ElementId x : members) {
        const auto& prod = table.left_generator_product(s, x);
        for (ElementId y : members) {
          const LaurentPoly mu = prod.coefficient(y);
          auto [it, fresh] = seen.emplace(Key{s, P[x], P[y]}, std::make_pair(mu, std::make_pair(x, y)));
          if (fresh) continue;
          ++quadruples;
          if (!(it->second.first == mu) && v.passed) {
            v = fail(v, "coefficients differ",
                     {{"s", s + 1},
                      {"x", sys.element_name(x)},
                      {"y", sys.element_name(y)},
                      {"x'", sys.element_name(it->second.second.first)},
                      {"y'", sys.element_name(it->second.second.second)},
                      {"mu", mu.to_string()},
                      {"mu'", it->second.first.to_string()}});
          }
        }
      }
    }
  }
  if (v.passed) v.detail = std::to_string(quadruples) + " repeated quadruples agree";
  rep.checks.push_back(v);
  return rep;
}

}  // namespace heckecells
