#pragma once

#include <string>
#include <vector>

#include "klcalc/cells.hpp"
#include "klcalc/klpoly.hpp"

namespace homology {

using cells::CellDecomposition;
using coxeter::CoxeterSystem;
using coxeter::ElementIndex;
using klpoly::KLTable;

// Tilting and injective dimensions are proved for type A and conjectural
// otherwise; every value carries this flag.
enum class Status { Theorem, Conjecture };

std::string status_name(Status s);
Status tilting_status(const CoxeterSystem& sys);

// Projective dimensions of the structural modules of the principal block,
// indexed by W. No module is ever materialized; only the closed formulas
// and their combinatorial inputs are evaluated.
int pd_standard(const CoxeterSystem& sys, ElementIndex w);    // l(w)
int pd_simple(const CoxeterSystem& sys, ElementIndex w);      // 2 l(w0) - l(w)
int pd_costandard(const CoxeterSystem& sys, ElementIndex w);  // 2 l(w0) - l(w)
int global_dimension(const CoxeterSystem& sys);               // 2 l(w0)
int pd_shuffled(const CoxeterSystem& sys, ElementIndex x, ElementIndex y);  // l(x)+l(y)

struct FlaggedDim {
  int value;
  Status status;
};
FlaggedDim pd_tilting(const CellDecomposition& two_sided, ElementIndex w);    // a(w)
FlaggedDim pd_injective(const CellDecomposition& two_sided, ElementIndex w);  // 2 a(w0 w)

// dim Ext^i(Delta(x), Delta(y)<-i>): 1 iff x >= y and l(x) - l(y) = i.
int linear_ext_dim(const CoxeterSystem& sys, ElementIndex x, ElementIndex y, int i);

struct UngradedExtResult {
  int dim;     // 1 iff x >= y
  int degree;  // the homological degree l(x) - l(y) at which it sits
};
UngradedExtResult ungraded_ext_dim(const CoxeterSystem& sys, ElementIndex x, ElementIndex y);

// dim Ext^1(Delta(x), Delta(e)<j>): the support statistic of x at j = l(x)-2.
int ext1_to_dominant(const CoxeterSystem& sys, ElementIndex x, int j);

struct ExtQuadruple {
  ElementIndex x;
  ElementIndex y;
  int i;
  int j;
  bool operator==(const ExtQuadruple&) const = default;
};

// Image of an Ext entry under the composed Koszul-Ringel self-duality:
// (x, y, i, j) -> (w0 x^{-1} w0, w0 y^{-1} w0, i+j, -j). Involutive.
ExtQuadruple duality_image(const CoxeterSystem& sys, const ExtQuadruple& q);

// Oracle: dim Ext^i(Delta(x), L(y)) as the coefficient of
// q^{(l(x)-l(y)-i)/2} in P_{y,x}; zero on parity failure or y not <= x.
int ext_std_simple_dim(const KLTable& table, ElementIndex x, ElementIndex y, int i);

/*
  Oracle: dim Ext^n(L(x), L(y)) by the Koszul-dual convolution
    sum_z sum_{i+j=n} dim Ext^i(Delta(z), L(x)) dim Ext^j(Delta(z), L(y)).
  Experimental; gated behind a rank-1 validation (the Ext profile of the
  simple dominant module in A1 must be 1, 0, 1 in degrees 0, 1, 2) that runs
  at construction. dim() throws unless the validation passed.
*/
class SimpleSimpleOracle {
public:
  explicit SimpleSimpleOracle(const KLTable& table);
  bool validated() const { return validated_; }
  int dim(ElementIndex x, ElementIndex y, int n) const;

private:
  const KLTable* table_;
  bool validated_ = false;
};

struct HomologyRow {
  ElementIndex w;
  int length;
  int support;  // the statistic l-bar
  int a;
  int pd_standard;
  int pd_simple;
  int pd_costandard;
  int pd_tilting;
  int pd_injective;
};

struct HomologyTable {
  std::vector<HomologyRow> rows;  // in element index order
  int global_dimension;
  Status tilting_status;
};

HomologyTable build_table(const KLTable& table, const CellDecomposition& two_sided);

}  // namespace homology
