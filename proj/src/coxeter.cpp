#include "heckecells/coxeter.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <set>
#include <stdexcept>

#include "heckecells/error.hpp"

namespace heckecells {

namespace {

std::vector<std::vector<int>> type_a_matrix(int rank) {
  std::vector<std::vector<int>> a(rank, std::vector<int>(rank, 0));
  for (int i = 0; i < rank; ++i) {
    a[i][i] = 2;
    if (i + 1 < rank) a[i][i + 1] = a[i + 1][i] = -1;
  }
  return a;
}

std::vector<std::string> numeric_labels(int rank) {
  std::vector<std::string> labels;
  for (int i = 1; i <= rank; ++i) labels.push_back(std::to_string(i));
  return labels;
}

void check_cartan(const CartanSpec& spec) {
  const std::size_t r = spec.labels.size();
  auto fail = [](const std::string& why) {
    throw Error(ErrorKind::MalformedCartan, why);
  };
  if (r == 0) fail("empty Cartan matrix");
  if (r > 32) fail("rank above 32 is not supported");
  if (spec.matrix.size() != r) fail("matrix size does not match label count");
  std::set<std::string> seen(spec.labels.begin(), spec.labels.end());
  if (seen.size() != r) fail("duplicate generator labels");
  for (std::size_t i = 0; i < r; ++i) {
    if (spec.matrix[i].size() != r) fail("matrix is not square");
    if (spec.matrix[i][i] != 2) fail("diagonal entries must be 2");
  }
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < r; ++j) {
      if (i == j) continue;
      const int aij = spec.matrix[i][j];
      const int aji = spec.matrix[j][i];
      if (aij > 0) fail("off-diagonal entries must be <= 0");
      if ((aij == 0) != (aji == 0)) fail("a_ij = 0 must imply a_ji = 0");
      if (aij * aji >= 4) {
        fail("generators " + spec.labels[i] + ", " + spec.labels[j] +
             " generate an infinite dihedral group");
      }
    }
  }
}

int coxeter_exponent_from_product(int product) {
  switch (product) {
    case 0: return 2;
    case 1: return 3;
    case 2: return 4;
    case 3: return 6;
    default: return 0;
  }
}

CoxeterType detect_type(const CartanSpec& spec) {
  const int r = static_cast<int>(spec.rank());
  if (spec.matrix == type_a_matrix(r)) return {CoxeterFamily::A, r};
  if (r < 2) return {};
  // B_r (and C_r, same Coxeter group): a Dynkin chain with one double bond at
  // one end.
  int doubles = 0;
  for (int i = 0; i < r; ++i) {
    for (int j = 0; j < r; ++j) {
      if (i == j) continue;
      const int a = spec.matrix[i][j];
      if (std::abs(i - j) > 1 && a != 0) return {};
      if (std::abs(i - j) == 1) {
        if (a == -2) {
          if (!(std::min(i, j) == r - 2 || std::min(i, j) == 0)) return {};
          if (r > 2 && std::min(i, j) != r - 2) return {};
          ++doubles;
        } else if (a != -1) {
          return {};
        }
      }
    }
  }
  if (doubles == 1) return {CoxeterFamily::B, r};
  return {};
}

}  // namespace

std::string CoxeterType::to_string() const {
  switch (family) {
    case CoxeterFamily::A: return "A" + std::to_string(rank);
    case CoxeterFamily::B: return "B" + std::to_string(rank);
    case CoxeterFamily::Other: break;
  }
  return "other";
}

CartanSpec cartan_preset(std::string_view name) {
  CartanSpec spec;
  spec.name = std::string(name);
  if (name.size() == 2 && name[0] == 'A' && name[1] >= '1' && name[1] <= '7') {
    const int r = name[1] - '0';
    spec.labels = numeric_labels(r);
    spec.matrix = type_a_matrix(r);
    return spec;
  }
  if (name == "B2") {
    spec.labels = numeric_labels(2);
    spec.matrix = {{2, -2}, {-1, 2}};
    return spec;
  }
  if (name == "B3") {
    spec.labels = numeric_labels(3);
    spec.matrix = {{2, -1, 0}, {-1, 2, -1}, {0, -2, 2}};
    return spec;
  }
  throw Error(ErrorKind::MalformedCartan,
              "unknown system preset '" + std::string(name) + "'");
}

CartanSpec cartan_from_json(const nlohmann::json& doc) {
  CartanSpec spec;
  try {
    if (doc.contains("name")) spec.name = doc.at("name").get<std::string>();
    spec.labels = doc.at("labels").get<std::vector<std::string>>();
    spec.matrix = doc.at("matrix").get<std::vector<std::vector<int>>>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::MalformedCartan,
                std::string("bad Cartan document: ") + e.what());
  }
  return spec;
}

nlohmann::json cartan_to_json(const CartanSpec& spec) {
  nlohmann::json doc;
  doc["labels"] = spec.labels;
  doc["matrix"] = spec.matrix;
  if (!spec.name.empty()) doc["name"] = spec.name;
  return doc;
}

CoxeterSystem CoxeterSystem::build(const CartanSpec& spec,
                                   std::size_t element_bound) {
  check_cartan(spec);
  CoxeterSystem sys;
  sys.spec_ = spec;
  sys.type_ = detect_type(spec);
  const int r = static_cast<int>(spec.rank());

  sys.m_.assign(r, std::vector<int>(r, 1));
  for (int i = 0; i < r; ++i) {
    for (int j = 0; j < r; ++j) {
      if (i != j) {
        sys.m_[i][j] =
            coxeter_exponent_from_product(spec.matrix[i][j] * spec.matrix[j][i]);
      }
    }
  }

  // Root system: closure of the simple roots under the simple reflections
  // s_i(b) = b - <alpha_i^vee, b> alpha_i, in simple root coordinates.
  std::map<std::vector<int>, int> root_index;
  std::vector<std::vector<int>> roots;
  std::deque<int> pending;
  auto add_root = [&](std::vector<int> root) {
    auto [it, inserted] =
        root_index.emplace(root, static_cast<int>(roots.size()));
    if (inserted) {
      roots.push_back(std::move(root));
      pending.push_back(it->second);
      if (roots.size() > element_bound) {
        throw Error(ErrorKind::InfiniteGroup,
                    "root system exceeds the element bound");
      }
    }
    return it->second;
  };
  std::vector<int> simple(r);
  for (int i = 0; i < r; ++i) {
    std::vector<int> e(r, 0);
    e[i] = 1;
    simple[i] = add_root(e);
  }
  while (!pending.empty()) {
    const int idx = pending.front();
    pending.pop_front();
    for (int i = 0; i < r; ++i) {
      std::vector<int> b = roots[idx];
      int pairing = 0;
      for (int j = 0; j < r; ++j) pairing += spec.matrix[i][j] * b[j];
      b[i] -= pairing;
      add_root(std::move(b));
    }
  }
  const int nroots = static_cast<int>(roots.size());
  std::vector<bool> positive(nroots);
  for (int k = 0; k < nroots; ++k) {
    positive[k] = std::all_of(roots[k].begin(), roots[k].end(),
                              [](int c) { return c >= 0; });
  }
  std::vector<std::vector<int>> reflect(r, std::vector<int>(nroots));
  for (int i = 0; i < r; ++i) {
    for (int k = 0; k < nroots; ++k) {
      std::vector<int> b = roots[k];
      int pairing = 0;
      for (int j = 0; j < r; ++j) pairing += spec.matrix[i][j] * b[j];
      b[i] -= pairing;
      reflect[i][k] = root_index.at(b);
    }
  }
  sys.num_positive_roots_ =
      static_cast<std::size_t>(std::count(positive.begin(), positive.end(), true));

  // Breadth-first closure under right multiplication.  An element is keyed by
  // the images of the simple roots, which determine it.
  std::vector<std::vector<int>> perms;
  std::vector<int> depth;
  std::map<std::vector<int>, ElementId> index;
  auto key_of = [&](const std::vector<int>& perm) {
    std::vector<int> key(r);
    for (int i = 0; i < r; ++i) key[i] = perm[simple[i]];
    return key;
  };
  std::vector<int> id(nroots);
  std::iota(id.begin(), id.end(), 0);
  perms.push_back(id);
  depth.push_back(0);
  index.emplace(key_of(id), 0);
  std::vector<std::vector<ElementId>> right_raw;
  for (std::size_t w = 0; w < perms.size(); ++w) {
    right_raw.emplace_back(r);
    for (int s = 0; s < r; ++s) {
      std::vector<int> ws(nroots);
      for (int k = 0; k < nroots; ++k) ws[k] = perms[w][reflect[s][k]];
      auto key = key_of(ws);
      auto it = index.find(key);
      if (it == index.end()) {
        if (perms.size() >= element_bound) {
          throw Error(ErrorKind::InfiniteGroup,
                      "element enumeration exceeded bound " +
                          std::to_string(element_bound));
        }
        it = index.emplace(std::move(key), static_cast<ElementId>(perms.size()))
                 .first;
        perms.push_back(std::move(ws));
        depth.push_back(depth[w] + 1);
      }
      right_raw[w][s] = it->second;
    }
  }
  const std::size_t n = perms.size();

  std::vector<int> length(n);
  for (std::size_t w = 0; w < n; ++w) {
    int inversions = 0;
    for (int k = 0; k < nroots; ++k) {
      if (positive[k] && !positive[perms[w][k]]) ++inversions;
    }
    length[w] = inversions;
    if (inversions != depth[w]) {
      throw std::logic_error("root inversion count disagrees with word length");
    }
  }

  std::vector<std::vector<ElementId>> left_raw(n, std::vector<ElementId>(r));
  std::vector<ElementId> inverse_raw(n);
  for (std::size_t w = 0; w < n; ++w) {
    for (int s = 0; s < r; ++s) {
      std::vector<int> key(r);
      for (int i = 0; i < r; ++i) key[i] = reflect[s][perms[w][simple[i]]];
      left_raw[w][s] = index.at(key);
    }
    std::vector<int> inv(nroots);
    for (int k = 0; k < nroots; ++k) inv[perms[w][k]] = k;
    inverse_raw[w] = index.at(key_of(inv));
  }

  // ShortLex-minimal words; BFS order is length-nondecreasing so s*w for a
  // left descent s already has its word.
  std::vector<std::vector<Generator>> words_raw(n);
  for (std::size_t w = 1; w < n; ++w) {
    for (int s = 0; s < r; ++s) {
      const ElementId sw = left_raw[w][s];
      if (length[sw] < length[w]) {
        words_raw[w].push_back(s);
        words_raw[w].insert(words_raw[w].end(), words_raw[sw].begin(),
                            words_raw[sw].end());
        break;
      }
    }
  }

  std::vector<ElementId> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](ElementId a, ElementId b) {
    if (length[a] != length[b]) return length[a] < length[b];
    return words_raw[a] < words_raw[b];
  });
  std::vector<ElementId> new_id(n);
  for (std::size_t k = 0; k < n; ++k) new_id[order[k]] = static_cast<ElementId>(k);

  sys.length_.resize(n);
  sys.left_.assign(n, std::vector<ElementId>(r));
  sys.right_.assign(n, std::vector<ElementId>(r));
  sys.inverse_.resize(n);
  sys.words_.resize(n);
  sys.left_desc_.assign(n, 0);
  sys.right_desc_.assign(n, 0);
  for (std::size_t old = 0; old < n; ++old) {
    const ElementId w = new_id[old];
    sys.length_[w] = length[old];
    sys.inverse_[w] = new_id[inverse_raw[old]];
    sys.words_[w] = words_raw[old];
    for (int s = 0; s < r; ++s) {
      sys.left_[w][s] = new_id[left_raw[old][s]];
      sys.right_[w][s] = new_id[right_raw[old][s]];
    }
  }
  for (std::size_t w = 0; w < n; ++w) {
    for (int s = 0; s < r; ++s) {
      if (sys.length_[sys.left_[w][s]] < sys.length_[w]) sys.left_desc_[w] |= 1U << s;
      if (sys.length_[sys.right_[w][s]] < sys.length_[w]) sys.right_desc_[w] |= 1U << s;
    }
    if (static_cast<std::size_t>(sys.length_[w]) == sys.num_positive_roots_) {
      sys.longest_ = static_cast<ElementId>(w);
    }
  }

  sys.names_.resize(n);
  for (std::size_t w = 0; w < n; ++w) {
    std::string name;
    if (sys.words_[w].empty()) {
      name = "e";
    } else {
      for (std::size_t k = 0; k < sys.words_[w].size(); ++k) {
        if (r > 9 && k > 0) name += '.';
        name += std::to_string(sys.words_[w][k] + 1);
      }
    }
    sys.name_index_.emplace(name, static_cast<ElementId>(w));
    sys.names_[w] = std::move(name);
  }

  if (sys.is_type_a()) {
    const int degree = r + 1;
    sys.one_line_.resize(n);
    for (std::size_t w = 0; w < n; ++w) {
      std::vector<int> p(degree);
      std::iota(p.begin(), p.end(), 1);
      for (Generator a : sys.words_[w]) std::swap(p[a], p[a + 1]);
      sys.one_line_index_.emplace(p, static_cast<ElementId>(w));
      sys.one_line_[w] = std::move(p);
    }
  }

  if (n <= kBruhatBitsetLimit) sys.build_bruhat_relation();
  return sys;
}

void CoxeterSystem::build_bruhat_relation() {
  const std::size_t n = size();
  const std::size_t words = (n + 63) / 64;
  bruhat_rows_.assign(n, std::vector<std::uint64_t>(words, 0));
  bruhat_rows_[0][0] = 1;
  // [e, w] = [e, sw] union s[e, sw] for any left descent s of w.
  for (std::size_t w = 1; w < n; ++w) {
    const Generator s = words_[w].front();
    const ElementId u = left_[w][s];
    auto& row = bruhat_rows_[w];
    row = bruhat_rows_[u];
    for (std::size_t x = 0; x < n; ++x) {
      if ((bruhat_rows_[u][x / 64] >> (x % 64)) & 1U) {
        const ElementId sx = left_[x][s];
        row[sx / 64] |= std::uint64_t{1} << (sx % 64);
      }
    }
  }
}

bool CoxeterSystem::bruhat_leq(ElementId x, ElementId y) const {
  if (!bruhat_rows_.empty()) return (bruhat_rows_[y][x / 64] >> (x % 64)) & 1U;
  // Descent recursion: for s in L(y), x <= y iff sx <= sy when s in L(x),
  // and iff x <= sy otherwise.
  while (true) {
    if (length_[x] > length_[y]) return false;
    if (length_[y] == 0) return x == 0;
    if (x == y) return true;
    const Generator s = words_[y].front();
    y = left_[y][s];
    if (is_left_descent(s, x)) x = left_[x][s];
  }
}

std::string CoxeterSystem::name() const {
  return spec_.name.empty() ? type_.to_string() : spec_.name;
}

ElementId CoxeterSystem::multiply(ElementId x, ElementId y) const {
  for (Generator s : words_[y]) x = right_[x][s];
  return x;
}

ElementId CoxeterSystem::from_word(const std::vector<Generator>& word) const {
  ElementId w = 0;
  for (Generator s : word) {
    if (s < 0 || s >= rank()) {
      throw Error(ErrorKind::UnknownElement, "generator index out of range");
    }
    w = right_[w][s];
  }
  return w;
}

std::optional<ElementId> CoxeterSystem::find(std::string_view name) const {
  if (name.empty()) return identity();
  auto it = name_index_.find(std::string(name));
  if (it != name_index_.end()) return it->second;
  // Accept any (not necessarily canonical or reduced) word.
  std::vector<Generator> word;
  if (rank() <= 9) {
    for (char c : name) {
      if (c < '1' || c > '0' + rank()) return std::nullopt;
      word.push_back(c - '1');
    }
  } else {
    std::size_t start = 0;
    while (start <= name.size()) {
      const std::size_t dot = std::min(name.find('.', start), name.size());
      const std::string part(name.substr(start, dot - start));
      if (part.empty() || part.find_first_not_of("0123456789") != std::string::npos)
        return std::nullopt;
      const int g = std::stoi(part);
      if (g < 1 || g > rank()) return std::nullopt;
      word.push_back(g - 1);
      start = dot + 1;
    }
  }
  return from_word(word);
}

ElementId CoxeterSystem::element(std::string_view name) const {
  auto w = find(name);
  if (!w) {
    throw Error(ErrorKind::UnknownElement,
                "'" + std::string(name) + "' is not an element of " + this->name());
  }
  return *w;
}

ElementAttributes CoxeterSystem::attributes(ElementId w) const {
  ElementAttributes a;
  a.length = length_[w];
  a.left_descents = left_desc_[w];
  a.right_descents = right_desc_[w];
  a.inverse = inverse_[w];
  if (is_type_a()) a.one_line = one_line_[w];
  return a;
}

std::vector<int> CoxeterSystem::one_line(ElementId w) const {
  if (!is_type_a()) {
    throw Error(ErrorKind::UnsupportedType, "one-line notation needs type A");
  }
  return one_line_[w];
}

ElementId CoxeterSystem::from_one_line(const std::vector<int>& perm) const {
  if (!is_type_a()) {
    throw Error(ErrorKind::UnsupportedType, "one-line notation needs type A");
  }
  auto it = one_line_index_.find(perm);
  if (it == one_line_index_.end()) {
    throw Error(ErrorKind::UnknownElement, "not a permutation of the right degree");
  }
  return it->second;
}

}  // namespace heckecells
