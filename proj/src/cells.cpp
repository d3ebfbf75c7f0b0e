#include "heckecells/cells.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/strong_components.hpp>
#include <boost/graph/topological_sort.hpp>

#include "heckecells/error.hpp"

namespace heckecells {

std::string to_string(Side side) {
  switch (side) {
    case Side::Left: return "left";
    case Side::Right: return "right";
    case Side::TwoSided: return "two-sided";
  }
  return "?";
}

PreorderGraph preorder_graph(const ValidatedTable& table, Side side) {
  const CoxeterSystem& sys = table.system();
  PreorderGraph g;
  g.edges.resize(sys.size());
  for (ElementId y = 0; y < sys.size(); ++y) {
    auto& out = g.edges[y];
    for (Generator s = 0; s < sys.rank(); ++s) {
      if (side != Side::Right) {
        for (const auto& [x, c] : table.left_generator_product(s, y).terms()) out.push_back(x);
      }
      if (side != Side::Left) {
        for (const auto& [x, c] : table.right_generator_product(y, s).terms()) out.push_back(x);
      }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    out.erase(std::remove(out.begin(), out.end(), y), out.end());
  }
  return g;
}

CellDecomposition CellDecomposition::from_graph(Side side, const PreorderGraph& graph) {
  using Graph = boost::adjacency_list<boost::vecS, boost::vecS, boost::directedS>;
  const std::size_t n = graph.edges.size();
  Graph g(n);
  for (std::size_t y = 0; y < n; ++y) {
    for (ElementId x : graph.edges[y]) boost::add_edge(y, x, g);
  }
  std::vector<int> comp(n);
  const int k = boost::strong_components(
      g, boost::make_iterator_property_map(comp.begin(), boost::get(boost::vertex_index, g)));

  // Renumber by minimal element; elements are visited in increasing order.
  std::vector<int> renumber(k, -1);
  CellDecomposition d;
  d.side_ = side;
  d.cell_of_.resize(n);
  for (std::size_t w = 0; w < n; ++w) {
    int& r = renumber[comp[w]];
    if (r < 0) {
      r = static_cast<int>(d.cells_.size());
      d.cells_.emplace_back();
    }
    d.cells_[r].push_back(static_cast<ElementId>(w));
    d.cell_of_[w] = static_cast<std::size_t>(r);
  }

  // Condensation: an edge upper -> lower.
  std::vector<std::vector<std::size_t>> succ(k);
  Graph cg(k);
  for (std::size_t y = 0; y < n; ++y) {
    for (ElementId x : graph.edges[y]) {
      const std::size_t a = d.cell_of_[y], b = d.cell_of_[x];
      if (a != b) succ[a].push_back(b);
    }
  }
  for (auto& s : succ) {
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
  }
  for (std::size_t a = 0; a < succ.size(); ++a) {
    for (std::size_t b : succ[a]) boost::add_edge(a, b, cg);
  }
  std::vector<std::size_t> order;  // reverse topological: sinks first
  boost::topological_sort(cg, std::back_inserter(order));
  d.below_.assign(k, boost::dynamic_bitset<>(k));
  for (std::size_t a : order) {
    d.below_[a].set(a);
    for (std::size_t b : succ[a]) d.below_[a] |= d.below_[b];
  }
  for (std::size_t a = 0; a < succ.size(); ++a) {
    for (std::size_t b : succ[a]) {
      bool implied = false;
      for (std::size_t c : succ[a]) implied = implied || (c != b && d.below_[c][b]);
      if (!implied) d.covers_.emplace_back(b, a);
    }
  }
  std::sort(d.covers_.begin(), d.covers_.end());
  return d;
}

CellDecomposition compute_cells(const ValidatedTable& table, Side side) {
  return CellDecomposition::from_graph(side, preorder_graph(table, side));
}

nlohmann::json CellDecomposition::to_json(const CoxeterSystem& sys) const {
  nlohmann::json cells = nlohmann::json::array();
  for (std::size_t c = 0; c < cells_.size(); ++c) {
    nlohmann::json members = nlohmann::json::array();
    for (ElementId w : cells_[c]) members.push_back(sys.element_name(w));
    cells.push_back({{"index", c}, {"members", members}});
  }
  nlohmann::json covers = nlohmann::json::array();
  for (const auto& [lo, hi] : covers_) covers.push_back({{"lower", lo}, {"upper", hi}});
  return {{"side", to_string(side_)}, {"cells", cells}, {"covers", covers}};
}

std::string CellDecomposition::to_dot(const CoxeterSystem& sys) const {
  std::ostringstream out;
  std::string side = to_string(side_);
  std::replace(side.begin(), side.end(), '-', '_');
  out << "digraph " << side << "_cells {\n  rankdir=TB;\n";
  for (std::size_t c = 0; c < cells_.size(); ++c) {
    out << "  c" << c << " [label=\"";
    for (std::size_t i = 0; i < cells_[c].size(); ++i) {
      out << (i ? " " : "") << sys.element_name(cells_[c][i]);
    }
    out << "\"];\n";
  }
  for (const auto& [lo, hi] : covers_) out << "  c" << hi << " -> c" << lo << ";\n";
  out << "}\n";
  return out.str();
}

std::optional<std::size_t> CellModule::index_of(ElementId w) const {
  if (w >= index_.size() || index_[w] == std::numeric_limits<std::size_t>::max()) {
    return std::nullopt;
  }
  return index_[w];
}

CellModule build_cell_module(const ValidatedTable& table, std::vector<ElementId> basis,
                             Side acting_side) {
  if (acting_side == Side::TwoSided) {
    throw std::invalid_argument("a cell module is acted on from one side");
  }
  const CoxeterSystem& sys = table.system();
  CellModule m;
  m.side_ = acting_side;
  m.basis_ = std::move(basis);
  m.index_.assign(sys.size(), std::numeric_limits<std::size_t>::max());
  for (std::size_t i = 0; i < m.basis_.size(); ++i) m.index_[m.basis_[i]] = i;
  const std::size_t d = m.basis_.size();
  for (Generator s = 0; s < sys.rank(); ++s) {
    LaurentMatrix g(d, d);
    for (std::size_t j = 0; j < d; ++j) {
      const ElementId y = m.basis_[j];
      const auto& prod = acting_side == Side::Left ? table.left_generator_product(s, y)
                                                   : table.right_generator_product(y, s);
      for (const auto& [z, c] : prod.terms()) {
        if (auto i = m.index_of(z)) {
          g(*i, j) = c;
        } else {
          m.discarded_.push_back({s, y, z, c});
        }
      }
    }
    m.generators_.push_back(std::move(g));
  }
  return m;
}

CellModule cell_module(const ValidatedTable& table, const CellDecomposition& cells,
                       std::size_t cell) {
  if (cells.side() == Side::TwoSided) {
    throw std::invalid_argument("use two_sided_module for two-sided cells");
  }
  return build_cell_module(table, cells.members(cell), cells.side());
}

std::vector<std::size_t> left_cells_in(const CellDecomposition& two_sided,
                                       const CellDecomposition& left, std::size_t cell) {
  std::vector<std::size_t> out;
  for (ElementId w : two_sided.members(cell)) out.push_back(left.cell_of(w));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

CellModule two_sided_module(const ValidatedTable& table, const CellDecomposition& two_sided,
                            const CellDecomposition& left, std::size_t cell) {
  std::vector<ElementId> basis;
  for (std::size_t c : left_cells_in(two_sided, left, cell)) {
    for (ElementId w : left.members(c)) {
      if (two_sided.cell_of(w) != cell) {
        throw Error(ErrorKind::CellMismatch, "left cell not contained in a two-sided cell");
      }
      basis.push_back(w);
    }
  }
  return build_cell_module(table, std::move(basis), Side::Left);
}

std::vector<IntMatrix> CellModule::standard_actions_at_one(const CoxeterSystem& sys) const {
  const std::size_t d = dim();
  std::vector<IntMatrix> rho_s;
  for (const auto& g : generators_) rho_s.push_back(eval_at_one(g) - IntMatrix::identity(d));
  std::vector<IntMatrix> out(sys.size());
  out[sys.identity()] = IntMatrix::identity(d);
  // Element ids are sorted by length, so sw is done before w.
  for (ElementId w = 1; w < sys.size(); ++w) {
    const Generator s = sys.word(w).front();
    const ElementId u = sys.left_mult(s, w);
    out[w] = side_ == Side::Left ? rho_s[s] * out[u] : out[u] * rho_s[s];
  }
  return out;
}

nlohmann::json CellModule::to_json(const CoxeterSystem& sys) const {
  nlohmann::json basis = nlohmann::json::array();
  for (ElementId w : basis_) basis.push_back(sys.element_name(w));
  nlohmann::json gens = nlohmann::json::array();
  for (const auto& g : generators_) {
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t i = 0; i < g.rows(); ++i) {
      nlohmann::json row = nlohmann::json::array();
      for (std::size_t j = 0; j < g.cols(); ++j) row.push_back(g(i, j).to_string());
      rows.push_back(row);
    }
    gens.push_back(rows);
  }
  nlohmann::json lower = nlohmann::json::array();
  for (const auto& t : discarded_) {
    lower.push_back({{"s", t.s + 1},
                     {"from", sys.element_name(t.from)},
                     {"to", sys.element_name(t.to)},
                     {"coefficient", t.coefficient.to_string()}});
  }
  return {{"acting_side", to_string(side_)},
          {"basis", basis},
          {"generators", gens},
          {"discarded", lower}};
}

CellAtlas::CellAtlas(const ValidatedTable& table)
    : table_(&table),
      left_(compute_cells(table, Side::Left)),
      right_(compute_cells(table, Side::Right)),
      two_sided_(compute_cells(table, Side::TwoSided)),
      rho_(left_.num_cells()) {
  for (std::size_t c = 0; c < left_.num_cells(); ++c) {
    modules_.push_back(cell_module(table, left_, c));
  }
}

const std::vector<IntMatrix>& CellAtlas::rho(std::size_t left_cell) const {
  std::lock_guard lock(mutex_);
  auto& slot = rho_[left_cell];
  if (!slot) {
    slot = std::make_unique<const std::vector<IntMatrix>>(
        modules_[left_cell].standard_actions_at_one(system()));
  }
  return *slot;
}

}  // namespace heckecells
