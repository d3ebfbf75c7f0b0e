#include "heckecells/perron.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <thread>

#include <boost/multiprecision/integer.hpp>

#include "heckecells/error.hpp"

namespace heckecells {

namespace {

Rational parse_rational(const nlohmann::json& v) {
  if (v.is_number_integer()) return Rational(v.get<long long>());
  if (v.is_string()) {
    const std::string s = v.get<std::string>();
    const auto slash = s.find('/');
    try {
      if (slash == std::string::npos) return Rational(Integer(s));
      return Rational(Integer(s.substr(0, slash)), Integer(s.substr(slash + 1)));
    } catch (const std::exception&) {
    }
  }
  throw Error(ErrorKind::MalformedDocument,
              "weight must be an integer or an \"a/b\" string: " + v.dump());
}

template <class F>
void parallel_for(std::size_t n, unsigned jobs, F f) {
  jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(n)));
  if (jobs <= 1) {
    for (std::size_t i = 0; i < n; ++i) f(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < jobs; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) {
        try {
          f(i);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

double max_abs(const Eigen::MatrixXd& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

// v = 1 actions of H_w in floating point, on any module given by its
// generator matrices.
std::vector<Eigen::MatrixXd> standard_actions_double(const CellModule& m,
                                                     const CoxeterSystem& sys) {
  const auto d = static_cast<Eigen::Index>(m.dim());
  std::vector<Eigen::MatrixXd> rho_s;
  for (Generator s = 0; s < sys.rank(); ++s) {
    rho_s.push_back(to_eigen(eval_at_one(m.generator(s))) - Eigen::MatrixXd::Identity(d, d));
  }
  std::vector<Eigen::MatrixXd> out(sys.size());
  out[sys.identity()] = Eigen::MatrixXd::Identity(d, d);
  for (ElementId w = 1; w < sys.size(); ++w) {
    const Generator s = sys.word(w).front();
    out[w] = rho_s[s] * out[sys.left_mult(s, w)];
  }
  return out;
}

std::vector<double> module_character(const CharacterTable& chars,
                                     const std::vector<IntMatrix>& rho) {
  std::vector<double> chi(chars.num_classes());
  for (std::size_t k = 0; k < chi.size(); ++k) {
    const IntMatrix& m = rho[chars.class_rep(k)];
    Integer tr = 0;
    for (std::size_t i = 0; i < m.rows(); ++i) tr += m(i, i);
    chi[k] = tr.convert_to<double>();
  }
  return chi;
}

std::string join_names(const CoxeterSystem& sys, const std::vector<ElementId>& ws) {
  std::string out;
  for (ElementId w : ws) out += (out.empty() ? "" : " ") + sys.element_name(w);
  return out;
}

nlohmann::json matrix_json(const Eigen::MatrixXd& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(row);
  }
  return rows;
}

}  // namespace

// ---- weights

WeightVector WeightVector::uniform(std::size_t n) {
  WeightVector w;
  w.w_.assign(n, Rational(1));
  return w;
}

WeightVector WeightVector::random(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> k(16, 256);
  WeightVector w;
  for (std::size_t i = 0; i < n; ++i) w.w_.push_back(Rational(k(rng), 64));
  w.label_ = "random:" + std::to_string(seed);
  return w;
}

WeightVector WeightVector::from_json(const nlohmann::json& doc, const CoxeterSystem& sys) {
  if (!doc.is_object()) throw Error(ErrorKind::MalformedDocument, "weights must be an object");
  WeightVector w = uniform(sys.size());
  if (doc.contains("default")) {
    const Rational d = parse_rational(doc["default"]);
    for (ElementId x = 0; x < sys.size(); ++x) w.set(x, d);
  }
  if (doc.contains("weights")) {
    if (!doc["weights"].is_object()) {
      throw Error(ErrorKind::MalformedDocument, "\"weights\" must map element names to values");
    }
    for (const auto& [name, value] : doc["weights"].items()) {
      w.set(sys.element(name), parse_rational(value));
    }
  }
  w.label_ = "file";
  return w;
}

WeightVector WeightVector::parse(const std::string& spec, const CoxeterSystem& sys) {
  if (spec.empty() || spec == "uniform") return uniform(sys.size());
  if (spec.rfind("random:", 0) == 0) {
    try {
      return random(sys.size(), std::stoull(spec.substr(7)));
    } catch (const std::logic_error&) {
      throw Error(ErrorKind::MalformedDocument, "bad seed in weights spec " + spec);
    }
  }
  std::ifstream in(spec);
  if (!in) throw Error(ErrorKind::MalformedDocument, "cannot open weights file " + spec);
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::MalformedDocument, std::string("weights file: ") + e.what());
  }
  return from_json(doc, sys);
}

void WeightVector::set(ElementId w, const Rational& c) {
  if (c <= 0) throw Error(ErrorKind::MalformedDocument, "weights must be positive");
  w_.at(w) = c;
}

Integer WeightVector::denominator() const {
  Integer d = 1;
  for (const auto& c : w_) {
    d = boost::multiprecision::lcm(d, boost::multiprecision::denominator(c));
  }
  return d;
}

// ---- specialization

Eigen::MatrixXd SpecializedAction::value() const {
  return to_eigen(numerator) / denominator.convert_to<double>();
}

std::vector<Integer> standard_coefficients(const ValidatedTable& table,
                                           const WeightVector& weights,
                                           const std::vector<ElementId>& elements) {
  const Integer den = weights.denominator();
  std::vector<Integer> alpha(table.size());
  for (ElementId w : elements) {
    const Rational& c = weights[w];
    const Integer cw = boost::multiprecision::numerator(c) * den /
                       boost::multiprecision::denominator(c);
    for (const auto& [y, h] : table.std_expansion(w).terms()) alpha[y] += cw * h.eval_at_one();
  }
  return alpha;
}

SpecializedAction act(const std::vector<IntMatrix>& rho, const std::vector<Integer>& alpha,
                      const Integer& denominator) {
  const std::size_t d = rho.at(0).rows();
  SpecializedAction out{IntMatrix(d, d), denominator};
  for (std::size_t y = 0; y < alpha.size(); ++y) {
    if (alpha[y] != 0) out.numerator += alpha[y] * rho[y];
  }
  return out;
}

SpecializedAction specialize_action(const CellAtlas& atlas, std::size_t left_cell,
                                    const WeightVector& weights) {
  const std::size_t J = atlas.two_sided_cell_of_left(left_cell);
  const auto alpha =
      standard_coefficients(atlas.table(), weights, atlas.two_sided().members(J));
  return act(atlas.rho(left_cell), alpha, weights.denominator());
}

SpecializedAction specialize_full_action(const CellAtlas& atlas, std::size_t left_cell,
                                         const WeightVector& weights) {
  std::vector<ElementId> all(atlas.system().size());
  for (ElementId w = 0; w < all.size(); ++w) all[w] = w;
  const auto alpha = standard_coefficients(atlas.table(), weights, all);
  return act(atlas.rho(left_cell), alpha, weights.denominator());
}

// ---- Perron-Frobenius

PerronData pf_analyze(const Eigen::MatrixXd& m, const PerronOptions& opts) {
  const Eigen::Index n = m.rows();
  if (n == 0 || m.cols() != n) throw std::invalid_argument("pf_analyze needs a square matrix");
  if ((m.array() <= 0).any()) {
    throw Error(ErrorKind::NotPositive, "matrix has a nonpositive entry");
  }
  PerronData out;
  auto power = [&](const Eigen::MatrixXd& a, Eigen::VectorXd& x, long& its, double& res) {
    x = Eigen::VectorXd::Constant(n, 1.0 / static_cast<double>(n));
    for (its = 1; its <= opts.max_iterations; ++its) {
      const Eigen::VectorXd y = a * x;
      const double lambda = x.dot(y) / x.dot(x);
      res = (y - lambda * x).norm() / (std::abs(lambda) * x.norm());
      x = y / y.sum();
      if (res < opts.residual_tol) return lambda;
    }
    throw Error(ErrorKind::NoConvergence,
                "power iteration stopped at residual " + std::to_string(res));
  };
  long its_left = 0;
  double res_left = 0;
  out.lambda = power(m, out.right, out.iterations, out.residual);
  power(m.transpose(), out.left, its_left, res_left);
  out.iterations = std::max(out.iterations, its_left);
  out.residual = std::max(out.residual, res_left);
  out.left /= out.left.dot(out.right);
  out.projector = out.right * out.left.transpose();

  if (static_cast<std::size_t>(n) <= opts.crosscheck_max_dim) {
    Eigen::EigenSolver<Eigen::MatrixXd> es(m, false);
    out.dense_lambda = es.eigenvalues().cwiseAbs().maxCoeff();
    if (std::abs(out.dense_lambda - out.lambda) > opts.crosscheck_tol * out.lambda) {
      throw Error(ErrorKind::NoConvergence,
                  "power iteration and dense eigensolver disagree: " +
                      std::to_string(out.lambda) + " vs " + std::to_string(out.dense_lambda));
    }
  }
  return out;
}

CellPerron analyze_cell(const CellAtlas& atlas, std::size_t left_cell,
                        const WeightVector& weights, const PerronOptions& opts) {
  CellPerron out;
  out.cell = left_cell;
  out.restricted = specialize_action(atlas, left_cell, weights);
  out.data = pf_analyze(out.restricted.value(), opts);
  out.full_lambda = pf_analyze(specialize_full_action(atlas, left_cell, weights).value(), opts)
                        .lambda;
  return out;
}

// ---- idempotents

bool IdempotentReport::passed(double tol) const {
  return d_positive && block_residual <= tol && limit_mismatch <= tol &&
         (!idempotency_residual || *idempotency_residual <= tol);
}

nlohmann::json IdempotentReport::to_json(const CoxeterSystem& sys) const {
  nlohmann::json coeff = nlohmann::json::array();
  for (std::size_t i = 0; i < basis.size(); ++i) {
    coeff.push_back({{"element", sys.element_name(basis[i])}, {"d", d[i]}});
  }
  nlohmann::json out = {{"two_sided_cell", cell},
                        {"lambda", lambda},
                        {"coefficients", coeff},
                        {"N", matrix_json(N.value())},
                        {"N_J", matrix_json(NJ)},
                        {"iterations", iterations},
                        {"d_positive", d_positive},
                        {"block_residual", block_residual},
                        {"limit_mismatch", limit_mismatch},
                        {"passed", passed()}};
  out["idempotency_residual"] =
      idempotency_residual ? nlohmann::json(*idempotency_residual) : nlohmann::json(nullptr);
  return out;
}

IdempotentReport ej_idempotent(const CellAtlas& atlas, std::size_t J,
                               const WeightVector& weights, const PerronOptions& opts) {
  const CoxeterSystem& sys = atlas.system();
  const ValidatedTable& table = atlas.table();
  if (sys.size() > opts.idempotent_max_order) {
    throw Error(ErrorKind::UnsupportedType,
                "two-sided module analysis is limited to groups of order " +
                    std::to_string(opts.idempotent_max_order));
  }
  IdempotentReport rep;
  rep.cell = J;
  const CellModule mod = two_sided_module(table, atlas.two_sided(), atlas.left(), J);
  rep.basis = mod.basis();
  for (ElementId w : rep.basis) rep.left_cell_of.push_back(atlas.left().cell_of(w));
  const auto members = atlas.two_sided().members(J);
  rep.N = act(mod.standard_actions_at_one(sys), standard_coefficients(table, weights, members),
              weights.denominator());
  const Eigen::MatrixXd N = rep.N.value();
  const auto n = static_cast<Eigen::Index>(rep.basis.size());

  // lambda is the common PF eigenvalue of the diagonal blocks.
  rep.lambda = 0;
  for (std::size_t c : atlas.left_cells_in(J)) {
    const double l = pf_analyze(specialize_action(atlas, c, weights).value(), opts).lambda;
    if (rep.lambda == 0) rep.lambda = l;
    if (std::abs(l - rep.lambda) > opts.crosscheck_tol * rep.lambda) {
      throw Error(ErrorKind::CellMismatch, "left cells of one two-sided cell have different "
                                           "Perron-Frobenius eigenvalues");
    }
  }
  const Eigen::MatrixXd P = N / rep.lambda;

  Eigen::VectorXd c(n);
  for (Eigen::Index i = 0; i < n; ++i) c(i) = weights[rep.basis[i]].convert_to<double>();
  Eigen::VectorXd d = c / rep.lambda;
  for (rep.iterations = 1;; ++rep.iterations) {
    const Eigen::VectorXd next = P * d;
    const double step = (next - d).cwiseAbs().maxCoeff();
    d = next;
    if (step <= 1e-13 * d.cwiseAbs().maxCoeff()) break;
    if (rep.iterations >= opts.max_iterations) {
      throw Error(ErrorKind::NoConvergence, "d_{x,m} did not converge");
    }
  }
  rep.d.assign(d.data(), d.data() + n);
  rep.d_positive = (d.array() > 0).all();

  // N_J = lim (N / lambda)^m by repeated squaring.
  // Rounding in lambda compounds with the exponent, so stop at the first
  // near-fixed point instead of squaring on.
  Eigen::MatrixXd NJ = P;
  for (int k = 0;; ++k) {
    const Eigen::MatrixXd sq = NJ * NJ;
    const double delta = max_abs(sq - NJ);
    NJ = sq;
    if (delta <= 1e-12 * std::max(1.0, max_abs(NJ))) break;
    if (k == 40) throw Error(ErrorKind::NoConvergence, "N^m / lambda^m did not converge");
  }
  rep.NJ = NJ;
  rep.limit_mismatch = (NJ * c / rep.lambda - d).cwiseAbs().maxCoeff();
  const double scale = std::max(1.0, max_abs(NJ));
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      if (rep.left_cell_of[i] != rep.left_cell_of[j]) {
        rep.block_residual = std::max(rep.block_residual, std::abs(NJ(i, j)) / scale);
      }
    }
  }

  // e_J^2 = e_J in H / I_J: left multiplication on {pkl_x : x >=_2 J}.
  std::vector<ElementId> quotient;
  for (ElementId x = 0; x < sys.size(); ++x) {
    if (atlas.two_sided().leq(J, atlas.two_sided().cell_of(x))) quotient.push_back(x);
  }
  const CellModule q = build_cell_module(table, quotient, Side::Left);
  const auto rho = standard_actions_double(q, sys);
  std::vector<double> beta(sys.size(), 0.0);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (const auto& [y, h] : table.std_expansion(rep.basis[i]).terms()) {
      beta[y] += d(i) * h.eval_at_one().convert_to<double>();
    }
  }
  const auto qd = static_cast<Eigen::Index>(quotient.size());
  Eigen::MatrixXd E = Eigen::MatrixXd::Zero(qd, qd);
  for (ElementId y = 0; y < sys.size(); ++y) {
    if (beta[y] != 0) E += beta[y] * rho[y];
  }
  rep.idempotency_residual = max_abs(E * E - E) / std::max(1.0, max_abs(E));
  return rep;
}

// ---- apex

ApexResult apex(const CellAtlas& atlas, std::size_t left_cell) {
  const auto& two = atlas.two_sided();
  const auto& rho = atlas.rho(left_cell);
  const ValidatedTable& table = atlas.table();
  const std::size_t d = rho.front().rows();
  ApexResult out;
  for (std::size_t J = 0; J < two.num_cells(); ++J) {
    for (ElementId x : two.members(J)) {
      IntMatrix m(d, d);
      for (const auto& [y, h] : table.std_expansion(x).terms()) m += h.eval_at_one() * rho[y];
      if (!m.is_zero()) {
        out.acting.push_back(J);
        break;
      }
    }
  }
  bool found = false;
  for (std::size_t a : out.acting) {
    bool minimum = true;
    for (std::size_t b : out.acting) minimum = minimum && two.leq(a, b);
    if (minimum) {
      out.apex = a;
      found = true;
    }
  }
  if (!found) {
    throw Error(ErrorKind::NoMinimum, "the two-sided cells acting on left cell " +
                                          std::to_string(left_cell) + " have no minimum");
  }
  out.is_own_cell = out.apex == atlas.two_sided_cell_of_left(left_cell);
  return out;
}

// ---- characters

long long mn_character(const Partition& lambda, const Partition& mu) {
  static std::mutex memo_mutex;
  static std::map<std::pair<std::vector<int>, std::vector<int>>, long long> memo;
  if (lambda.size() != mu.size()) throw Error(ErrorKind::SizeMismatch, "partition sizes differ");
  if (mu.size() == 0) return 1;
  const auto key = std::make_pair(lambda.parts(), mu.parts());
  {
    std::lock_guard lock(memo_mutex);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
  }
  // Beta numbers: removing a k-rim hook moves one bead from b to b - k.
  const int len = lambda.length();
  std::vector<int> beta(len);
  for (int i = 0; i < len; ++i) beta[i] = lambda[i] + (len - 1 - i);
  const int k = mu.parts().front();
  const Partition rest(std::vector<int>(mu.parts().begin() + 1, mu.parts().end()));
  long long total = 0;
  for (int i = 0; i < len; ++i) {
    const int to = beta[i] - k;
    if (to < 0 || std::find(beta.begin(), beta.end(), to) != beta.end()) continue;
    int between = 0;
    for (int b : beta) between += (b > to && b < beta[i]);
    std::vector<int> nb = beta;
    nb[i] = to;
    std::sort(nb.rbegin(), nb.rend());
    std::vector<int> parts(len);
    for (int j = 0; j < len; ++j) parts[j] = nb[j] - (len - 1 - j);
    total += (between % 2 ? -1 : 1) * mn_character(Partition(parts), rest);
  }
  std::lock_guard lock(memo_mutex);
  memo[key] = total;
  return total;
}

std::size_t CharacterTable::index(const std::string& name) const {
  auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) throw std::out_of_range("no irreducible named " + name);
  return static_cast<std::size_t>(it - names_.begin());
}

double CharacterTable::inner(const std::vector<double>& a, const std::vector<double>& b) const {
  double s = 0;
  for (std::size_t k = 0; k < reps_.size(); ++k) {
    s += static_cast<double>(sizes_[k]) * a[k] * b[k];
  }
  return s / static_cast<double>(group_order());
}

double CharacterTable::orthonormality_defect() const {
  double worst = 0;
  for (std::size_t i = 0; i < size(); ++i) {
    const std::vector<double> a(values_[i].begin(), values_[i].end());
    for (std::size_t j = 0; j < size(); ++j) {
      const std::vector<double> b(values_[j].begin(), values_[j].end());
      worst = std::max(worst, std::abs(inner(a, b) - (i == j ? 1.0 : 0.0)));
    }
  }
  return worst;
}

CharacterTable irreducible_characters(const CoxeterSystem& sys) {
  const auto& type = sys.type();
  const bool a = type.family == CoxeterFamily::A && type.rank + 1 <= 8;
  const bool b2 = type.family == CoxeterFamily::B && type.rank == 2;
  if (!a && !b2) {
    throw Error(ErrorKind::UnsupportedType,
                "character tables are available for A1-A7 and B2, not " + type.to_string());
  }
  CharacterTable t;
  // Conjugacy classes: orbits of w -> s w s.
  constexpr std::size_t none = static_cast<std::size_t>(-1);
  t.class_of_.assign(sys.size(), none);
  for (ElementId w = 0; w < sys.size(); ++w) {
    if (t.class_of_[w] != none) continue;
    const std::size_t k = t.reps_.size();
    t.reps_.push_back(w);
    t.sizes_.push_back(0);
    std::vector<ElementId> stack{w};
    t.class_of_[w] = k;
    while (!stack.empty()) {
      const ElementId x = stack.back();
      stack.pop_back();
      ++t.sizes_[k];
      for (Generator s = 0; s < sys.rank(); ++s) {
        const ElementId y = sys.right_mult(sys.left_mult(s, x), s);
        if (t.class_of_[y] == none) {
          t.class_of_[y] = k;
          stack.push_back(y);
        }
      }
    }
  }
  if (a) {
    const int n = type.rank + 1;
    std::vector<Partition> types;
    for (ElementId r : t.reps_) {
      const auto perm = sys.one_line(r);
      std::vector<bool> seen(n);
      std::vector<int> cycles;
      for (int i = 0; i < n; ++i) {
        int len = 0;
        for (int j = i; !seen[j]; j = perm[j] - 1) {
          seen[j] = true;
          ++len;
        }
        if (len) cycles.push_back(len);
      }
      std::sort(cycles.rbegin(), cycles.rend());
      types.emplace_back(cycles);
    }
    for (const auto& lambda : partitions(n)) {
      t.names_.push_back(lambda.to_string());
      std::vector<long long> row;
      for (const auto& mu : types) row.push_back(mn_character(lambda, mu));
      t.values_.push_back(row);
    }
  } else {
    t.names_ = {"triv", "sgn", "sgn_s", "sgn_t", "geom"};
    t.values_.assign(5, {});
    for (ElementId r : t.reps_) {
      int n1 = 0, n2 = 0;
      for (Generator s : sys.word(r)) (s == 0 ? n1 : n2)++;
      const int len = n1 + n2;
      t.values_[0].push_back(1);
      t.values_[1].push_back(len % 2 ? -1 : 1);
      t.values_[2].push_back(n2 % 2 ? -1 : 1);
      t.values_[3].push_back(n1 % 2 ? -1 : 1);
      // Rotation by len * 45 degrees for even len, a reflection for odd len.
      t.values_[4].push_back(len % 2 ? 0 : (len == 0 ? 2 : len == 4 ? -2 : 0));
    }
  }
  if (t.orthonormality_defect() > 1e-9) {
    throw std::logic_error("character table is not orthonormal");
  }
  return t;
}

std::vector<int> multiplicities(const CharacterTable& chars, const std::vector<IntMatrix>& rho) {
  const auto chi = module_character(chars, rho);
  std::vector<int> out;
  for (std::size_t i = 0; i < chars.size(); ++i) {
    std::vector<double> row(chars.num_classes());
    for (std::size_t k = 0; k < row.size(); ++k) row[k] = static_cast<double>(chars.value(i, k));
    const double m = chars.inner(chi, row);
    if (std::abs(m - std::round(m)) > 1e-6 || std::round(m) < 0) {
      throw std::logic_error("module character is not a character");
    }
    out.push_back(static_cast<int>(std::lround(m)));
  }
  return out;
}

SpecialModule special_module(const CellAtlas& atlas, const CharacterTable& chars,
                             std::size_t left_cell, const WeightVector& weights,
                             const PerronOptions& opts) {
  const CoxeterSystem& sys = atlas.system();
  const auto& rho = atlas.rho(left_cell);
  SpecialModule out;
  out.cell = left_cell;
  out.multiplicities = multiplicities(chars, rho);
  const PerronData pf = pf_analyze(specialize_full_action(atlas, left_cell, weights).value(), opts);
  out.lambda = pf.lambda;

  const auto d = static_cast<Eigen::Index>(rho.front().rows());
  std::vector<Eigen::VectorXd> class_sum(chars.num_classes(), Eigen::VectorXd::Zero(d));
  for (ElementId w = 0; w < sys.size(); ++w) {
    class_sum[chars.class_of(w)] += to_eigen(rho[w]) * pf.right;
  }
  out.projection_norms.assign(chars.size(), 0.0);
  for (std::size_t i = 0; i < chars.size(); ++i) {
    if (out.multiplicities[i] == 0) continue;
    Eigen::VectorXd p = Eigen::VectorXd::Zero(d);
    for (std::size_t k = 0; k < chars.num_classes(); ++k) {
      p += static_cast<double>(chars.value(i, k)) * class_sum[k];
    }
    p *= static_cast<double>(chars.dim(i)) / static_cast<double>(sys.size());
    out.projection_norms[i] = p.norm();
  }
  std::vector<std::size_t> order(chars.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return out.projection_norms[a] > out.projection_norms[b];
  });
  out.irreducible = order[0];
  out.name = chars.names()[order[0]];
  if (order.size() > 1 &&
      out.projection_norms[order[1]] > opts.projection_tol * out.projection_norms[order[0]]) {
    throw Error(ErrorKind::AmbiguousProjection,
                "eigenvector projects onto both " + out.name + " and " +
                    chars.names()[order[1]]);
  }
  return out;
}

std::vector<std::vector<std::size_t>> families(const CellAtlas& atlas,
                                               const CharacterTable& chars) {
  const auto& two = atlas.two_sided();
  std::vector<std::vector<std::size_t>> out(two.num_cells());
  std::vector<int> owners(chars.size(), 0);
  for (std::size_t J = 0; J < two.num_cells(); ++J) {
    std::vector<int> total(chars.size(), 0);
    for (std::size_t c : atlas.left_cells_in(J)) {
      const auto m = multiplicities(chars, atlas.rho(c));
      for (std::size_t i = 0; i < m.size(); ++i) total[i] += m[i];
    }
    for (std::size_t i = 0; i < total.size(); ++i) {
      if (total[i] > 0) {
        out[J].push_back(i);
        ++owners[i];
      }
    }
  }
  for (std::size_t i = 0; i < owners.size(); ++i) {
    if (owners[i] != 1) {
      throw Error(ErrorKind::NotAPartition, chars.names()[i] + " occurs in " +
                                                std::to_string(owners[i]) +
                                                " two-sided cells");
    }
  }
  return out;
}

// ---- conjecture

bool ConjectureReport::monotone() const {
  return std::all_of(pairs.begin(), pairs.end(), [](const Pair& p) { return p.holds; });
}

bool ConjectureReport::passed(double tol) const {
  return constant(tol) && monotone() && (!lc_changes || lc_changes->empty());
}

nlohmann::json ConjectureReport::to_json(const CoxeterSystem& sys, const CellAtlas& atlas) const {
  nlohmann::json cells = nlohmann::json::array();
  for (std::size_t J = 0; J < cell_value.size(); ++J) {
    cells.push_back({{"index", J},
                     {"members", join_names(sys, atlas.two_sided().members(J))},
                     {"a", cell_value[J]}});
  }
  nlohmann::json ps = nlohmann::json::array();
  for (const auto& p : pairs) {
    ps.push_back({{"lower", p.lower},
                  {"upper", p.upper},
                  {"a_lower", p.a_lower},
                  {"a_upper", p.a_upper},
                  {"holds", p.holds}});
  }
  nlohmann::json out = {{"two_sided_cells", cells},
                        {"constancy_defect", constancy_defect},
                        {"monotone", monotone()},
                        {"pairs", ps},
                        {"passed", passed()}};
  out["lc_changes"] = lc_changes ? nlohmann::json(*lc_changes) : nlohmann::json(nullptr);
  return out;
}

ConjectureReport conjecture_check(const CellAtlas& atlas, const WeightVector& weights,
                                  const PerronOptions& opts, const CharacterTable* chars,
                                  const std::vector<WeightVector>& alternatives) {
  const auto& two = atlas.two_sided();
  ConjectureReport rep;
  for (std::size_t c = 0; c < atlas.left().num_cells(); ++c) {
    rep.left_value.push_back(
        pf_analyze(specialize_full_action(atlas, c, weights).value(), opts).lambda);
  }
  rep.cell_value.assign(two.num_cells(), 0.0);
  for (std::size_t J = 0; J < two.num_cells(); ++J) {
    double lo = 0, hi = 0;
    bool first = true;
    for (std::size_t c : atlas.left_cells_in(J)) {
      const double a = rep.left_value[c];
      if (first) rep.cell_value[J] = lo = hi = a;
      lo = std::min(lo, a);
      hi = std::max(hi, a);
      first = false;
    }
    rep.constancy_defect = std::max(rep.constancy_defect, (hi - lo) / hi);
  }
  for (std::size_t a = 0; a < two.num_cells(); ++a) {
    for (std::size_t b = 0; b < two.num_cells(); ++b) {
      if (!two.less(a, b)) continue;
      const double x = rep.cell_value[a], y = rep.cell_value[b];
      rep.pairs.push_back({a, b, x, y, x >= y * (1 - opts.crosscheck_tol)});
    }
  }
  if (chars && !alternatives.empty()) {
    std::vector<std::size_t> changed;
    for (std::size_t c = 0; c < atlas.left().num_cells(); ++c) {
      const std::size_t base = special_module(atlas, *chars, c, weights, opts).irreducible;
      for (const auto& alt : alternatives) {
        if (special_module(atlas, *chars, c, alt, opts).irreducible != base) {
          changed.push_back(c);
          break;
        }
      }
    }
    rep.lc_changes = changed;
  }
  return rep;
}

// ---- report

bool PerronReport::passed(double tol) const {
  return std::all_of(idempotents.begin(), idempotents.end(),
                     [&](const IdempotentReport& r) { return r.passed(tol); });
}

nlohmann::json PerronReport::to_json(const CellAtlas& atlas) const {
  const CoxeterSystem& sys = atlas.system();
  nlohmann::json cs = nlohmann::json::array();
  for (std::size_t i = 0; i < cells.size(); ++i) {
    const auto& c = cells[i];
    nlohmann::json members = nlohmann::json::array();
    for (ElementId w : atlas.left().members(c.cell)) members.push_back(sys.element_name(w));
    nlohmann::json v(std::vector<double>(c.data.right.data(),
                                         c.data.right.data() + c.data.right.size()));
    nlohmann::json entry = {{"index", c.cell},
                            {"members", members},
                            {"two_sided_cell", atlas.two_sided_cell_of_left(c.cell)},
                            {"lambda", c.data.lambda},
                            {"full_lambda", c.full_lambda},
                            {"eigenvector", v},
                            {"projector", matrix_json(c.data.projector)},
                            {"iterations", c.data.iterations},
                            {"residual", c.data.residual}};
    entry["special_module"] = special[i] ? nlohmann::json(special[i]->name) : nullptr;
    cs.push_back(entry);
  }
  nlohmann::json ids = nlohmann::json::array();
  for (const auto& r : idempotents) ids.push_back(r.to_json(sys));
  nlohmann::json fams = nlohmann::json::array();
  for (const auto& f : families) {
    nlohmann::json names = nlohmann::json::array();
    for (std::size_t i : f) names.push_back(irreducible_names[i]);
    fams.push_back(names);
  }
  return {{"system", sys.name()},
          {"p", atlas.table().p()},
          {"left_cells", cs},
          {"two_sided_cells", ids},
          {"families", fams},
          {"passed", passed()}};
}

std::string PerronReport::to_csv(const CellAtlas& atlas) const {
  std::ostringstream out;
  out.precision(17);
  out << "cell,members,lambda,full_lambda,L_C,family\n";
  for (std::size_t i = 0; i < cells.size(); ++i) {
    const auto& c = cells[i];
    std::string fam;
    if (!families.empty()) {
      for (std::size_t k : families[atlas.two_sided_cell_of_left(c.cell)]) {
        fam += (fam.empty() ? "" : ";") + irreducible_names[k];
      }
    }
    out << c.cell << ',' << join_names(atlas.system(), atlas.left().members(c.cell)) << ','
        << c.data.lambda << ',' << c.full_lambda << ','
        << (special[i] ? special[i]->name : "") << ",\"" << fam << "\"\n";
  }
  return out.str();
}

PerronReport perron_report(const CellAtlas& atlas, const WeightVector& weights,
                           const PerronOptions& opts, unsigned jobs) {
  PerronReport rep;
  const std::size_t nl = atlas.left().num_cells();
  std::optional<CharacterTable> chars;
  try {
    chars = irreducible_characters(atlas.system());
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::UnsupportedType) throw;
  }
  // Build the v = 1 representations up front so workers do not queue on them.
  parallel_for(nl, jobs, [&](std::size_t c) { atlas.rho(c); });
  rep.cells.resize(nl);
  rep.special.resize(nl);
  parallel_for(nl, jobs, [&](std::size_t c) {
    rep.cells[c] = analyze_cell(atlas, c, weights, opts);
    if (chars) rep.special[c] = special_module(atlas, *chars, c, weights, opts);
  });
  if (atlas.system().size() <= opts.idempotent_max_order) {
    const std::size_t nt = atlas.two_sided().num_cells();
    rep.idempotents.resize(nt);
    parallel_for(nt, jobs,
                 [&](std::size_t J) { rep.idempotents[J] = ej_idempotent(atlas, J, weights, opts); });
  }
  if (chars) {
    rep.families = families(atlas, *chars);
    rep.irreducible_names = chars->names();
  }
  return rep;
}

}  // namespace heckecells
