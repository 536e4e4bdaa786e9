#pragma once

#include <optional>
#include <string>
#include <vector>

#include "klcalc/klpoly.hpp"

namespace cells {

using coxeter::CoxeterSystem;
using coxeter::ElementIndex;
using coxeter::GeneratorSet;

enum class Side { Left, Right, TwoSided };

std::string side_name(Side side);

/*
  Cell decomposition of W from the W-graph: a directed edge u -> z is present
  when the symmetrized mu(u,z) is nonzero and the descent set of z (left,
  right, or either, according to the side) is not contained in that of u.
  Cells are the strongly connected components; the preorder is reachability
  in the condensation, with c <= d meaning c is reachable from d (so the cell
  of the identity is the maximum and the cell of w0 the minimum).

  For the two-sided decomposition every cell is checked to contain an
  involution and Lusztig's a-function is attached as the minimum of
  l(u) - 2 delta(u) over the involutions u of the cell. The minimum is
  attained exactly at the distinguished involutions; in type A every
  involution attains it, so there the minimum is the common value.
*/
class CellDecomposition {
public:
  static CellDecomposition build(const klpoly::KLTable& table, Side side);

  const CoxeterSystem& system() const { return *sys_; }
  Side side() const { return side_; }
  std::size_t cell_count() const { return members_.size(); }
  int cell_of(ElementIndex w) const { return cell_of_[w]; }
  const std::vector<ElementIndex>& members(int cell) const { return members_[cell]; }

  // c <= d in the cell preorder (see above).
  bool preorder_leq(int c, int d) const;

  // Two-sided decompositions only.
  int a_value(int cell) const;
  int a_function(ElementIndex w) const;

private:
  CellDecomposition() = default;
  const CoxeterSystem* sys_ = nullptr;
  Side side_ = Side::TwoSided;
  std::vector<int> cell_of_;
  std::vector<std::vector<ElementIndex>> members_;
  std::size_t reach_stride_ = 0;
  std::vector<std::uint64_t> reach_;  // bit (c,d): d reachable from c
  std::vector<int> a_values_;         // two-sided only
};

// a(w0^S) == l(w0^S) for the standard parabolic subgroup W_S.
bool check_a_parabolic(const CellDecomposition& two_sided, GeneratorSet S);

// Id of a two-sided cell whose involutions disagree on l(u) - 2 delta(u), if
// any. Empty in type A, where all involutions are distinguished; nonempty
// already in B3.
std::optional<int> involution_defect(const CellDecomposition& two_sided,
                                     const klpoly::KLTable& table);

}  // namespace cells
