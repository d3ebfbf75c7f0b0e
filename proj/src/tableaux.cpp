#include "heckecells/tableaux.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "heckecells/error.hpp"

namespace heckecells {

Partition::Partition(std::vector<int> parts) : parts_(std::move(parts)) {
  while (!parts_.empty() && parts_.back() == 0) parts_.pop_back();
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    if (parts_[i] < 0 || (i > 0 && parts_[i] > parts_[i - 1])) {
      throw Error(ErrorKind::MalformedDocument, "not a partition: " + to_string());
    }
  }
}

int Partition::size() const { return std::accumulate(parts_.begin(), parts_.end(), 0); }

Partition Partition::transpose() const {
  std::vector<int> t(parts_.empty() ? 0 : parts_[0], 0);
  for (int p : parts_) {
    for (int c = 0; c < p; ++c) ++t[c];
  }
  return Partition(std::move(t));
}

std::string Partition::to_string() const {
  std::string out = "(";
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(parts_[i]);
  }
  return out + ")";
}

namespace {

void partitions_rec(int remaining, int max_part, std::vector<int>& cur,
                    std::vector<Partition>& out) {
  if (remaining == 0) {
    out.emplace_back(cur);
    return;
  }
  for (int p = std::min(remaining, max_part); p >= 1; --p) {
    cur.push_back(p);
    partitions_rec(remaining - p, p, cur, out);
    cur.pop_back();
  }
}

}  // namespace

std::vector<Partition> partitions(int n) {
  std::vector<Partition> out;
  std::vector<int> cur;
  partitions_rec(n, n, cur, out);
  return out;
}

bool dominance_leq(const Partition& lambda, const Partition& mu) {
  if (lambda.size() != mu.size()) {
    throw Error(ErrorKind::SizeMismatch,
                lambda.to_string() + " and " + mu.to_string() + " have different sizes");
  }
  int a = 0, b = 0;
  for (int k = 0; k < std::max(lambda.length(), mu.length()); ++k) {
    a += lambda[k];
    b += mu[k];
    if (a > b) return false;
  }
  return true;
}

std::vector<Partition> raising_operations(const Partition& mu) {
  std::vector<Partition> out;
  for (int j = 1; j < mu.length(); ++j) {
    for (int i = 0; i < j; ++i) {
      std::vector<int> p = mu.parts();
      ++p[i];
      --p[j];
      bool ok = true;
      for (std::size_t r = 1; r < p.size(); ++r) ok = ok && p[r] <= p[r - 1];
      if (ok) out.emplace_back(std::move(p));
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Partition StandardTableau::shape() const {
  std::vector<int> p;
  for (const auto& r : rows) p.push_back(static_cast<int>(r.size()));
  return Partition(p);
}

int StandardTableau::size() const {
  int n = 0;
  for (const auto& r : rows) n += static_cast<int>(r.size());
  return n;
}

bool StandardTableau::is_standard() const {
  const int n = size();
  std::vector<bool> seen(n + 1, false);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].empty() || (r > 0 && rows[r].size() > rows[r - 1].size())) return false;
    for (std::size_t c = 0; c < rows[r].size(); ++c) {
      const int x = rows[r][c];
      if (x < 1 || x > n || seen[x]) return false;
      seen[x] = true;
      if (c > 0 && rows[r][c - 1] >= x) return false;
      if (r > 0 && rows[r - 1][c] >= x) return false;
    }
  }
  return true;
}

StandardTableau StandardTableau::transpose() const {
  StandardTableau t;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t c = 0; c < rows[r].size(); ++c) {
      if (t.rows.size() <= c) t.rows.emplace_back();
      t.rows[c].push_back(rows[r][c]);
    }
  }
  return t;
}

std::string StandardTableau::to_text() const {
  const int width = static_cast<int>(std::to_string(size()).size());
  std::ostringstream out;
  for (const auto& r : rows) {
    for (std::size_t c = 0; c < r.size(); ++c) {
      const std::string e = std::to_string(r[c]);
      out << "[" << std::string(width - e.size(), ' ') << e << "]";
    }
    out << "\n";
  }
  return out.str();
}

namespace {

void tableaux_rec(std::vector<int>& shape, int n, StandardTableau& t,
                  std::vector<StandardTableau>& out) {
  if (n == 0) {
    out.push_back(t);
    return;
  }
  // n sits in a removable corner.
  for (std::size_t r = 0; r < shape.size(); ++r) {
    if (shape[r] == 0) continue;
    if (r + 1 < shape.size() && shape[r + 1] == shape[r]) continue;
    const int c = --shape[r];
    t.rows[r][c] = n;
    tableaux_rec(shape, n - 1, t, out);
    ++shape[r];
  }
}

}  // namespace

std::vector<StandardTableau> standard_tableaux(const Partition& shape) {
  StandardTableau t;
  for (int p : shape.parts()) t.rows.emplace_back(p, 0);
  std::vector<int> s = shape.parts();
  std::vector<StandardTableau> out;
  tableaux_rec(s, shape.size(), t, out);
  std::sort(out.begin(), out.end());
  return out;
}

long long count_standard_tableaux(const Partition& shape) {
  const Partition t = shape.transpose();
  long double f = 1;
  int k = 1;
  for (int r = 0; r < shape.length(); ++r) {
    for (int c = 0; c < shape[r]; ++c) {
      const int hook = (shape[r] - c - 1) + (t[c] - r - 1) + 1;
      f = f * k++ / hook;
    }
  }
  return static_cast<long long>(f + 0.5L);
}

RSPair rs(const Permutation& w) {
  RSPair out;
  for (std::size_t j = 0; j < w.size(); ++j) {
    int x = w[j];
    std::size_t r = 0;
    for (;; ++r) {
      if (r == out.P.rows.size()) {
        out.P.rows.push_back({x});
        out.Q.rows.push_back({static_cast<int>(j) + 1});
        break;
      }
      auto& row = out.P.rows[r];
      auto it = std::upper_bound(row.begin(), row.end(), x);
      if (it == row.end()) {
        row.push_back(x);
        out.Q.rows[r].push_back(static_cast<int>(j) + 1);
        break;
      }
      std::swap(x, *it);
    }
  }
  return out;
}

Permutation rs_inverse(const StandardTableau& P, const StandardTableau& Q) {
  if (P.shape() != Q.shape()) {
    throw Error(ErrorKind::ShapeMismatch,
                "P has shape " + P.shape().to_string() + ", Q has " + Q.shape().to_string());
  }
  if (!P.is_standard() || !Q.is_standard()) {
    throw Error(ErrorKind::ShapeMismatch, "not a pair of standard tableaux");
  }
  StandardTableau p = P, q = Q;
  const int n = P.size();
  Permutation w(n);
  for (int k = n; k >= 1; --k) {
    std::size_t r = 0;
    while (q.rows[r].back() != k) ++r;
    q.rows[r].pop_back();
    int x = p.rows[r].back();
    p.rows[r].pop_back();
    if (p.rows[r].empty()) {
      p.rows.pop_back();
      q.rows.pop_back();
    }
    while (r-- > 0) {
      auto& row = p.rows[r];
      auto it = std::lower_bound(row.begin(), row.end(), x);
      --it;  // largest entry smaller than x
      std::swap(x, *it);
    }
    w[k - 1] = x;
  }
  return w;
}

std::set<Permutation> knuth_class(const Permutation& w) {
  std::set<Permutation> seen{w};
  std::deque<Permutation> queue{w};
  auto visit = [&](Permutation u) {
    if (seen.insert(u).second) queue.push_back(std::move(u));
  };
  while (!queue.empty()) {
    const Permutation u = queue.front();
    queue.pop_front();
    for (std::size_t j = 0; j + 2 < u.size(); ++j) {
      const int a = u[j], b = u[j + 1], c = u[j + 2];
      // yxz <-> yzx with x < y < z: the first letter is the middle value.
      if ((b < a && a < c) || (c < a && a < b)) {
        Permutation v = u;
        std::swap(v[j + 1], v[j + 2]);
        visit(std::move(v));
      }
      // xzy <-> zxy with x < y < z: the last letter is the middle value.
      if ((a < c && c < b) || (b < c && c < a)) {
        Permutation v = u;
        std::swap(v[j], v[j + 1]);
        visit(std::move(v));
      }
    }
  }
  return seen;
}

std::set<int> tableau_descents(const StandardTableau& T) {
  const int n = T.size();
  std::vector<std::pair<int, int>> pos(n + 1);
  for (std::size_t r = 0; r < T.rows.size(); ++r) {
    for (std::size_t c = 0; c < T.rows[r].size(); ++c) {
      pos[T.rows[r][c]] = {static_cast<int>(r), static_cast<int>(c)};
    }
  }
  std::set<int> out;
  for (int i = 1; i < n; ++i) {
    if (pos[i + 1].first > pos[i].first && pos[i + 1].second <= pos[i].second) out.insert(i);
  }
  return out;
}

StandardTableau evacuation(const StandardTableau& T) {
  const int n = T.size();
  StandardTableau t = T;
  StandardTableau out;
  for (const auto& r : T.rows) out.rows.emplace_back(r.size(), 0);
  constexpr int kHole = 0;
  for (int step = 0; step < n; ++step) {
    // The smallest remaining entry is always at the top-left corner.
    std::size_t r = 0, c = 0;
    t.rows[0][0] = kHole;
    for (;;) {
      const bool has_right = c + 1 < t.rows[r].size();
      const bool has_below = r + 1 < t.rows.size() && c < t.rows[r + 1].size();
      if (!has_right && !has_below) break;
      if (has_below && (!has_right || t.rows[r + 1][c] < t.rows[r][c + 1])) {
        std::swap(t.rows[r][c], t.rows[r + 1][c]);
        ++r;
      } else {
        std::swap(t.rows[r][c], t.rows[r][c + 1]);
        ++c;
      }
    }
    out.rows[r][c] = n - step;
    t.rows[r].pop_back();
    if (t.rows[r].empty()) t.rows.pop_back();
  }
  return out;
}

Permutation permutation_inverse(const Permutation& w) {
  Permutation inv(w.size());
  for (std::size_t j = 0; j < w.size(); ++j) inv[w[j] - 1] = static_cast<int>(j) + 1;
  return inv;
}

Permutation permutation_multiply(const Permutation& x, const Permutation& y) {
  Permutation out(y.size());
  for (std::size_t j = 0; j < y.size(); ++j) out[j] = x[y[j] - 1];
  return out;
}

Permutation longest_permutation(int n) {
  Permutation w(n);
  for (int j = 0; j < n; ++j) w[j] = n - j;
  return w;
}

Permutation apply_right(Permutation w, int i) {
  std::swap(w[i - 1], w[i]);
  return w;
}

namespace {

struct Construction {
  Permutation y;
  int s = 0;
};

// The tableau of shape sigma that is column superstandard in each of three
// pieces: rows [0, l), rows l and l+1, and the remaining rows.  y is its
// reading word (rows bottom to top, each left to right), s the position of
// the adjacent pair k + sigma_l + sigma_{l+1} - 1, k + sigma_l + sigma_{l+1}.
Construction raise_construction(const Partition& sigma, int l) {
  StandardTableau T;
  for (int p : sigma.parts()) T.rows.emplace_back(p, 0);
  int next = 1;
  auto fill = [&](int from, int to) {
    for (int c = 0; c < sigma[from]; ++c) {
      for (int r = from; r < to && r < sigma.length() && c < sigma[r]; ++r) {
        T.rows[r][c] = next++;
      }
    }
  };
  fill(0, l);
  const int k = next - 1;
  fill(l, l + 2);
  if (l + 2 < sigma.length()) fill(l + 2, sigma.length());

  // The piece for rows l, l+1 is the interleaved picture of the proof.
  for (int c = 0; c < sigma[l + 1]; ++c) {
    if (T.rows[l][c] != k + 2 * c + 1 || T.rows[l + 1][c] != k + 2 * c + 2) {
      throw std::logic_error("unexpected filling in raise_construction");
    }
  }

  Construction out;
  for (int r = sigma.length(); r-- > 0;) {
    for (int x : T.rows[r]) out.y.push_back(x);
  }
  const int a = k + sigma[l] + sigma[l + 1];
  const Permutation inv = permutation_inverse(out.y);
  if (inv[a - 1] != inv[a - 2] + 1) {
    throw std::logic_error("raise_construction: entries are not adjacent");
  }
  out.s = inv[a - 2];
  return out;
}

}  // namespace

ChainWitness chain_witness(const Partition& lambda, const Partition& mu) {
  if (lambda == mu || !dominance_leq(mu, lambda)) {
    throw Error(ErrorKind::NotComparable,
                lambda.to_string() + " is not strictly above " + mu.to_string());
  }
  const int n = mu.size();
  int i = 0;
  while (lambda[i] <= mu[i]) ++i;

  ChainWitness out;
  if (mu[i + 1] > mu[i + 2]) {
    out.construction_case = 1;
    std::vector<int> nu = mu.parts();
    nu[i] += 1;
    nu[i + 1] -= 1;
    out.nu = Partition(nu);
    const Construction c = raise_construction(out.nu, i);
    out.s = c.s;
    out.x = apply_right(c.y, c.s);
  } else {
    out.construction_case = 2;
    int m = i + 1;
    while (mu[m + 1] == mu[i + 1]) ++m;
    std::vector<int> nu = mu.parts();
    if (mu[i] == mu[i + 1]) {
      nu[i] += 1;
    } else {
      nu[i + 1] += 1;
    }
    nu[m] -= 1;
    out.nu = Partition(nu);
    const Partition muT = mu.transpose(), nuT = out.nu.transpose();
    int l = 0;
    while (muT[l] == nuT[l]) ++l;
    const Construction c = raise_construction(muT, l);
    out.x = permutation_multiply(c.y, longest_permutation(n));
    out.s = n - c.s;
  }
  out.xs = apply_right(out.x, out.s);

  // Re-verify everything by direct computation.
  const bool ok = rs(out.x).P.shape() == mu && out.x[out.s - 1] > out.x[out.s] &&
                  rs(out.xs).P.shape() == out.nu && dominance_leq(out.nu, lambda) &&
                  dominance_leq(mu, out.nu) && out.nu != mu;
  if (!ok) {
    throw std::logic_error("chain_witness post-conditions failed for " + lambda.to_string() +
                           " > " + mu.to_string());
  }
  return out;
}

}  // namespace heckecells
