#include "klcalc/homology.hpp"

#include <limits>
#include <stdexcept>

namespace homology {

std::string status_name(Status s) { return s == Status::Theorem ? "theorem" : "conjecture"; }

Status tilting_status(const CoxeterSystem& sys) {
  return sys.type_label() == 'A' ? Status::Theorem : Status::Conjecture;
}

int pd_standard(const CoxeterSystem& sys, ElementIndex w) { return sys.length(w); }

int pd_simple(const CoxeterSystem& sys, ElementIndex w) {
  return 2 * sys.length(sys.longest_element()) - sys.length(w);
}

int pd_costandard(const CoxeterSystem& sys, ElementIndex w) { return pd_simple(sys, w); }

int global_dimension(const CoxeterSystem& sys) {
  return 2 * sys.length(sys.longest_element());
}

int pd_shuffled(const CoxeterSystem& sys, ElementIndex x, ElementIndex y) {
  return sys.length(x) + sys.length(y);
}

FlaggedDim pd_tilting(const CellDecomposition& two_sided, ElementIndex w) {
  return {two_sided.a_function(w), tilting_status(two_sided.system())};
}

FlaggedDim pd_injective(const CellDecomposition& two_sided, ElementIndex w) {
  const CoxeterSystem& W = two_sided.system();
  const ElementIndex w0w = W.multiply(W.longest_element(), w);
  return {2 * two_sided.a_function(w0w), tilting_status(W)};
}

int linear_ext_dim(const CoxeterSystem& sys, ElementIndex x, ElementIndex y, int i) {
  return sys.bruhat_leq(y, x) && sys.length(x) - sys.length(y) == i ? 1 : 0;
}

UngradedExtResult ungraded_ext_dim(const CoxeterSystem& sys, ElementIndex x, ElementIndex y) {
  return {sys.bruhat_leq(y, x) ? 1 : 0, sys.length(x) - sys.length(y)};
}

int ext1_to_dominant(const CoxeterSystem& sys, ElementIndex x, int j) {
  return j == sys.length(x) - 2 ? sys.support_size(x) : 0;
}

ExtQuadruple duality_image(const CoxeterSystem& sys, const ExtQuadruple& q) {
  const ElementIndex w0 = sys.longest_element();
  auto twist = [&](ElementIndex u) {
    return sys.multiply(sys.multiply(w0, sys.inverse(u)), w0);
  };
  return {twist(q.x), twist(q.y), q.i + q.j, -q.j};
}

int ext_std_simple_dim(const KLTable& table, ElementIndex x, ElementIndex y, int i) {
  if (i < 0) return 0;
  const CoxeterSystem& W = table.system();
  if (!W.bruhat_leq(y, x)) return 0;
  const int num = W.length(x) - W.length(y) - i;
  if (num < 0 || num % 2 != 0) return 0;
  const auto& c = table.polynomial(y, x).coeff(num / 2);
  if (c > std::numeric_limits<int>::max())
    throw coxeter::consistency_error("Ext dimension out of range");
  return static_cast<int>(c);
}

SimpleSimpleOracle::SimpleSimpleOracle(const KLTable& table) : table_(&table) {
  // Rank-1 validation in a throwaway A1 block: the convolution must produce
  // the Ext profile (1, 0, 1) at the dominant simple and be the identity
  // pairing in degree 0.
  const CoxeterSystem a1 = CoxeterSystem::build('A', 1);
  KLTable t1(a1);
  t1.build();
  auto convolve = [&](ElementIndex x, ElementIndex y, int n) {
    int acc = 0;
    for (ElementIndex z = 0; z < a1.size(); ++z)
      for (int i = 0; i <= n; ++i)
        acc += ext_std_simple_dim(t1, z, x, i) * ext_std_simple_dim(t1, z, y, n - i);
    return acc;
  };
  bool ok = convolve(0, 0, 0) == 1 && convolve(0, 0, 1) == 0 && convolve(0, 0, 2) == 1;
  for (ElementIndex x = 0; x < a1.size() && ok; ++x)
    for (ElementIndex y = 0; y < a1.size() && ok; ++y)
      ok = convolve(x, y, 0) == (x == y ? 1 : 0);
  validated_ = ok;
}

int SimpleSimpleOracle::dim(ElementIndex x, ElementIndex y, int n) const {
  if (!validated_) throw std::logic_error("simple-simple oracle failed its validation");
  if (n < 0) return 0;
  const CoxeterSystem& W = table_->system();
  int acc = 0;
  for (ElementIndex z = 0; z < W.size(); ++z) {
    if (!W.bruhat_leq(x, z) || !W.bruhat_leq(y, z)) continue;
    for (int i = 0; i <= n; ++i) {
      const int a = ext_std_simple_dim(*table_, z, x, i);
      if (a == 0) continue;
      acc += a * ext_std_simple_dim(*table_, z, y, n - i);
    }
  }
  return acc;
}

HomologyTable build_table(const KLTable& table, const CellDecomposition& two_sided) {
  const CoxeterSystem& W = table.system();
  HomologyTable out;
  out.global_dimension = global_dimension(W);
  out.tilting_status = tilting_status(W);
  out.rows.reserve(W.size());
  for (ElementIndex w = 0; w < W.size(); ++w) {
    HomologyRow row;
    row.w = w;
    row.length = W.length(w);
    row.support = W.support_size(w);
    row.a = two_sided.a_function(w);
    row.pd_standard = pd_standard(W, w);
    row.pd_simple = pd_simple(W, w);
    row.pd_costandard = pd_costandard(W, w);
    row.pd_tilting = pd_tilting(two_sided, w).value;
    row.pd_injective = pd_injective(two_sided, w).value;
    out.rows.push_back(row);
  }
  return out;
}

}  // namespace homology
