#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "klcalc/coxeter.hpp"

namespace poset {

using coxeter::CoxeterSystem;
using coxeter::ElementIndex;

struct BruhatInterval {
  ElementIndex bottom;
  ElementIndex top;
  std::vector<ElementIndex> elements;                        // ascending index order
  std::vector<std::pair<ElementIndex, ElementIndex>> hasse;  // covering pairs (x, y), x covered by y
};

BruhatInterval interval(const CoxeterSystem& sys, ElementIndex x, ElementIndex y);

/*
  Moebius function of the Bruhat order, by interval-local recursion
  mu(x,x) = 1, mu(x,y) = -sum_{x <= z < y} mu(x,z), memoized per pair.
*/
class MobiusTable {
public:
  explicit MobiusTable(const CoxeterSystem& sys) : sys_(&sys) {}
  long long mobius(ElementIndex x, ElementIndex y);  // throws when x is not <= y

private:
  const CoxeterSystem* sys_;
  std::map<std::pair<ElementIndex, ElementIndex>, long long> memo_;
};

// Checks mu(x,y) == (-1)^{l(y)-l(x)} on every comparable pair; on failure
// returns the first counterexample.
std::optional<std::pair<ElementIndex, ElementIndex>> verma_mobius_counterexample(
    const CoxeterSystem& sys);
bool verify_verma_mobius(const CoxeterSystem& sys);

// Number of Bruhat-comparable pairs x <= y: the dimension of the incidence
// algebra, hence of the homomorphism algebra of the standard modules.
std::size_t incidence_dimension(const CoxeterSystem& sys);

// Arrows x -> y of the quiver of that algebra: pairs x > y with x = ty for a
// (not necessarily simple) reflection t.
std::vector<std::pair<ElementIndex, ElementIndex>> end_delta_quiver(const CoxeterSystem& sys);

}  // namespace poset
