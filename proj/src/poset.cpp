#include "klcalc/poset.hpp"

#include <algorithm>
#include <stdexcept>

namespace poset {

BruhatInterval interval(const CoxeterSystem& sys, ElementIndex x, ElementIndex y) {
  if (!sys.bruhat_leq(x, y)) throw std::invalid_argument("interval endpoints not comparable");
  BruhatInterval out;
  out.bottom = x;
  out.top = y;
  for (ElementIndex z = x; z <= y; ++z)
    if (sys.bruhat_leq(x, z) && sys.bruhat_leq(z, y)) out.elements.push_back(z);
  for (ElementIndex a : out.elements)
    for (ElementIndex b : out.elements)
      if (sys.bruhat_covers(a, b)) out.hasse.emplace_back(a, b);
  return out;
}

long long MobiusTable::mobius(ElementIndex x, ElementIndex y) {
  const CoxeterSystem& W = *sys_;
  if (!W.bruhat_leq(x, y)) throw std::invalid_argument("mobius requires x <= y");
  if (x == y) return 1;
  const auto key = std::make_pair(x, y);
  if (const auto it = memo_.find(key); it != memo_.end()) return it->second;
  long long acc = 0;
  for (ElementIndex z = x; z < y; ++z)
    if (W.bruhat_leq(x, z) && W.bruhat_leq(z, y)) acc += mobius(x, z);
  memo_[key] = -acc;
  return -acc;
}

std::optional<std::pair<ElementIndex, ElementIndex>> verma_mobius_counterexample(
    const CoxeterSystem& sys) {
  MobiusTable table(sys);
  for (ElementIndex y = 0; y < sys.size(); ++y)
    for (ElementIndex x = 0; x <= y; ++x) {
      if (!sys.bruhat_leq(x, y)) continue;
      const int gap = sys.length(y) - sys.length(x);
      const long long expected = gap % 2 == 0 ? 1 : -1;
      if (table.mobius(x, y) != expected) return std::make_pair(x, y);
    }
  return std::nullopt;
}

bool verify_verma_mobius(const CoxeterSystem& sys) {
  return !verma_mobius_counterexample(sys).has_value();
}

std::size_t incidence_dimension(const CoxeterSystem& sys) {
  std::size_t n = 0;
  for (ElementIndex y = 0; y < sys.size(); ++y)
    for (ElementIndex x = 0; x <= y; ++x)
      if (sys.bruhat_leq(x, y)) ++n;
  return n;
}

std::vector<std::pair<ElementIndex, ElementIndex>> end_delta_quiver(const CoxeterSystem& sys) {
  std::vector<std::pair<ElementIndex, ElementIndex>> arrows;
  for (ElementIndex t : sys.reflections())
    for (ElementIndex y = 0; y < sys.size(); ++y) {
      const ElementIndex x = sys.multiply(t, y);
      if (sys.length(x) > sys.length(y)) arrows.emplace_back(x, y);
    }
  std::sort(arrows.begin(), arrows.end());
  return arrows;
}

}  // namespace poset
