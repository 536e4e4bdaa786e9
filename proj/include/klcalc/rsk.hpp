#pragma once

#include <map>
#include <vector>

#include "klcalc/coxeter.hpp"

namespace rsk {

using coxeter::CoxeterSystem;
using coxeter::ElementIndex;
using coxeter::GeneratorSet;

// Weakly decreasing positive parts.
using Partition = std::vector<int>;

struct Tableau {
  std::vector<std::vector<int>> rows;
  Partition shape() const;
};

struct TableauPair {
  Tableau p;  // insertion tableau
  Tableau q;  // recording tableau
  Partition shape;
};

// One-line notation of a type-A group element under s_i -> (i, i+1); entries
// are 1..rank+1. Throws for systems of other types.
std::vector<int> one_line(const CoxeterSystem& sys, ElementIndex w);
ElementIndex element_of_one_line(const CoxeterSystem& sys, const std::vector<int>& perm);

// Row-insertion Robinson-Schensted correspondence of a permutation.
TableauPair rs_pair(const std::vector<int>& perm);
TableauPair rs_pair(const CoxeterSystem& sys, ElementIndex w);
Partition rs_shape(const CoxeterSystem& sys, ElementIndex w);

// Partition of W by RS shape; in type A this must coincide with the
// decomposition into two-sided cells, which the test suite asserts.
std::map<Partition, std::vector<ElementIndex>> shape_fibers(const CoxeterSystem& sys);

Partition conjugate(const Partition& lambda);

// Shape lambda(S) of the standard parabolic W_S of S_{rank+1}: runs of
// consecutive generators of sizes k contribute parts k+1, padded with 1s.
Partition parabolic_shape(const CoxeterSystem& sys, GeneratorSet S);

// shape(RS(w0^S)) == conjugate(lambda(S)).
bool check_w0S_shape(const CoxeterSystem& sys, GeneratorSet S);

std::size_t standard_tableau_count(const Partition& lambda);

}  // namespace rsk
