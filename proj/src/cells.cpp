#include "klcalc/cells.hpp"

#include <algorithm>
#include <stdexcept>

namespace cells {

std::string side_name(Side side) {
  switch (side) {
    case Side::Left:
      return "left";
    case Side::Right:
      return "right";
    default:
      return "twosided";
  }
}

namespace {

// Iterative Tarjan SCC; components are emitted deterministically and then
// renumbered by their minimal element so cell ids are canonical.
std::vector<int> strongly_connected_components(const std::vector<std::vector<ElementIndex>>& adj,
                                               std::size_t n, std::size_t& count) {
  std::vector<int> comp(n, -1), low(n, 0), disc(n, -1);
  std::vector<ElementIndex> stack;
  std::vector<char> on_stack(n, 0);
  int timer = 0;
  int ncomp = 0;

  struct Frame {
    ElementIndex v;
    std::size_t edge;
  };
  std::vector<Frame> call;

  for (ElementIndex root = 0; root < n; ++root) {
    if (disc[root] != -1) continue;
    call.push_back({root, 0});
    while (!call.empty()) {
      auto& [v, edge] = call.back();
      if (edge == 0) {
        disc[v] = low[v] = timer++;
        stack.push_back(v);
        on_stack[v] = 1;
      }
      if (edge < adj[v].size()) {
        const ElementIndex u = adj[v][edge++];
        if (disc[u] == -1) {
          call.push_back({u, 0});
        } else if (on_stack[u]) {
          low[v] = std::min(low[v], disc[u]);
        }
      } else {
        if (low[v] == disc[v]) {
          while (true) {
            const ElementIndex u = stack.back();
            stack.pop_back();
            on_stack[u] = 0;
            comp[u] = ncomp;
            if (u == v) break;
          }
          ++ncomp;
        }
        const ElementIndex child = v;
        call.pop_back();
        if (!call.empty()) low[call.back().v] = std::min(low[call.back().v], low[child]);
      }
    }
  }
  count = static_cast<std::size_t>(ncomp);
  return comp;
}

}  // namespace

CellDecomposition CellDecomposition::build(const klpoly::KLTable& table, Side side) {
  const CoxeterSystem& W = table.system();
  const std::size_t n = W.size();

  const bool use_left = side != Side::Right;
  const bool use_right = side != Side::Left;
  auto has_edge = [&](ElementIndex u, ElementIndex z) {
    bool e = false;
    if (use_left) e = e || (W.left_descents(z) & ~W.left_descents(u)) != 0;
    if (use_right) e = e || (W.right_descents(z) & ~W.right_descents(u)) != 0;
    return e;
  };

  std::vector<std::vector<ElementIndex>> adj(n);
  for (ElementIndex w = 0; w < n; ++w) {
    for (const auto& [y, m] : table.mu_row(w)) {
      (void)m;
      if (has_edge(w, y)) adj[w].push_back(y);
      if (has_edge(y, w)) adj[y].push_back(w);
    }
  }
  for (auto& a : adj) std::sort(a.begin(), a.end());

  std::size_t ncomp = 0;
  std::vector<int> comp = strongly_connected_components(adj, n, ncomp);

  // Canonical ids: sort components by their minimal element index.
  std::vector<ElementIndex> min_elem(ncomp, static_cast<ElementIndex>(n));
  for (ElementIndex w = 0; w < n; ++w)
    min_elem[comp[w]] = std::min(min_elem[comp[w]], w);
  std::vector<int> order(ncomp);
  for (std::size_t c = 0; c < ncomp; ++c) order[c] = static_cast<int>(c);
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return min_elem[a] < min_elem[b]; });
  std::vector<int> rename(ncomp);
  for (std::size_t k = 0; k < ncomp; ++k) rename[order[k]] = static_cast<int>(k);

  CellDecomposition dec;
  dec.sys_ = &W;
  dec.side_ = side;
  dec.cell_of_.resize(n);
  dec.members_.resize(ncomp);
  for (ElementIndex w = 0; w < n; ++w) {
    const int c = rename[comp[w]];
    dec.cell_of_[w] = c;
    dec.members_[c].push_back(w);
  }

  // Condensation reachability by BFS from every cell.
  dec.reach_stride_ = (ncomp + 63) / 64;
  dec.reach_.assign(ncomp * dec.reach_stride_, 0);
  std::vector<std::vector<int>> cadj(ncomp);
  for (ElementIndex w = 0; w < n; ++w)
    for (ElementIndex z : adj[w])
      if (dec.cell_of_[w] != dec.cell_of_[z]) cadj[dec.cell_of_[w]].push_back(dec.cell_of_[z]);
  for (auto& a : cadj) {
    std::sort(a.begin(), a.end());
    a.erase(std::unique(a.begin(), a.end()), a.end());
  }
  for (std::size_t c = 0; c < ncomp; ++c) {
    auto* row = dec.reach_.data() + c * dec.reach_stride_;
    std::vector<int> todo{static_cast<int>(c)};
    row[c >> 6] |= 1ull << (c & 63);
    while (!todo.empty()) {
      const int d = todo.back();
      todo.pop_back();
      for (int e : cadj[d]) {
        auto& word = row[e >> 6];
        const std::uint64_t bit = 1ull << (e & 63);
        if (!(word & bit)) {
          word |= bit;
          todo.push_back(e);
        }
      }
    }
  }
  // The restriction of reachability to distinct cells must be antisymmetric.
  for (std::size_t c = 0; c < ncomp; ++c)
    for (std::size_t d = c + 1; d < ncomp; ++d)
      if (dec.preorder_leq(static_cast<int>(c), static_cast<int>(d)) &&
          dec.preorder_leq(static_cast<int>(d), static_cast<int>(c)))
        throw coxeter::consistency_error("cell condensation is not a partial order");

  if (side == Side::TwoSided) {
    // a on a cell is the minimum of l(u) - 2 delta(u) over its involutions:
    // the minimum is attained exactly at the distinguished involutions, and
    // every cell contains one. In type A every involution attains it.
    dec.a_values_.assign(ncomp, -1);
    for (std::size_t c = 0; c < ncomp; ++c) {
      for (ElementIndex u : dec.members_[c]) {
        if (W.inverse(u) != u) continue;
        const int value = W.length(u) - 2 * table.delta(u);
        if (value < 0) throw coxeter::consistency_error("negative l(u) - 2 delta(u)");
        if (dec.a_values_[c] == -1 || value < dec.a_values_[c]) dec.a_values_[c] = value;
      }
      if (dec.a_values_[c] == -1)
        throw coxeter::consistency_error("two-sided cell without an involution");
    }
  }
  return dec;
}

bool CellDecomposition::preorder_leq(int c, int d) const {
  // c <= d: c reachable from d.
  const auto* row = reach_.data() + static_cast<std::size_t>(d) * reach_stride_;
  return (row[c >> 6] >> (c & 63)) & 1ull;
}

int CellDecomposition::a_value(int cell) const {
  if (side_ != Side::TwoSided)
    throw std::logic_error("a-function requires the two-sided decomposition");
  return a_values_[static_cast<std::size_t>(cell)];
}

int CellDecomposition::a_function(ElementIndex w) const { return a_value(cell_of_[w]); }

bool check_a_parabolic(const CellDecomposition& two_sided, GeneratorSet S) {
  const CoxeterSystem& W = two_sided.system();
  const ElementIndex w0S = W.parabolic_longest(S);
  return two_sided.a_function(w0S) == W.length(w0S);
}

std::optional<int> involution_defect(const CellDecomposition& two_sided,
                                     const klpoly::KLTable& table) {
  const CoxeterSystem& W = two_sided.system();
  for (std::size_t c = 0; c < two_sided.cell_count(); ++c) {
    int seen = -1;
    for (ElementIndex u : two_sided.members(static_cast<int>(c))) {
      if (W.inverse(u) != u) continue;
      const int value = W.length(u) - 2 * table.delta(u);
      if (seen == -1) seen = value;
      if (value != seen) return static_cast<int>(c);
    }
  }
  return std::nullopt;
}

}  // namespace cells
