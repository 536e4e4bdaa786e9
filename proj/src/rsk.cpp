#include "klcalc/rsk.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace rsk {

Partition Tableau::shape() const {
  Partition s;
  s.reserve(rows.size());
  for (const auto& r : rows) s.push_back(static_cast<int>(r.size()));
  return s;
}

std::vector<int> one_line(const CoxeterSystem& sys, ElementIndex w) {
  if (sys.type_label() != 'A')
    throw std::invalid_argument("one-line notation requires type A");
  const int n = sys.rank() + 1;
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 1);
  // Appending a letter composes on the right: the array entries at positions
  // a, a+1 swap.
  for (std::uint8_t a : sys.word(w)) std::swap(p[a], p[a + 1]);
  return p;
}

ElementIndex element_of_one_line(const CoxeterSystem& sys, const std::vector<int>& perm) {
  if (sys.type_label() != 'A')
    throw std::invalid_argument("one-line notation requires type A");
  const int n = sys.rank() + 1;
  if (static_cast<int>(perm.size()) != n)
    throw std::invalid_argument("permutation length must be rank+1");
  std::vector<char> seen(n + 1, 0);
  for (int v : perm) {
    if (v < 1 || v > n || seen[v]) throw std::invalid_argument("not a permutation of 1..n");
    seen[v] = 1;
  }
  std::vector<int> p = perm;
  coxeter::Word letters;
  bool progress = true;
  while (progress) {
    progress = false;
    for (int i = 0; i + 1 < n; ++i) {
      if (p[i] > p[i + 1]) {
        std::swap(p[i], p[i + 1]);
        letters.push_back(i);
        progress = true;
      }
    }
  }
  std::reverse(letters.begin(), letters.end());
  return sys.from_word(letters);
}

TableauPair rs_pair(const std::vector<int>& perm) {
  TableauPair out;
  for (std::size_t step = 0; step < perm.size(); ++step) {
    int x = perm[step];
    std::size_t row = 0;
    while (true) {
      if (row == out.p.rows.size()) {
        out.p.rows.emplace_back();
        out.q.rows.emplace_back();
      }
      auto& r = out.p.rows[row];
      const auto it = std::upper_bound(r.begin(), r.end(), x);
      if (it == r.end()) {
        r.push_back(x);
        out.q.rows[row].push_back(static_cast<int>(step) + 1);
        break;
      }
      std::swap(x, *it);
      ++row;
    }
  }
  out.shape = out.p.shape();
  return out;
}

TableauPair rs_pair(const CoxeterSystem& sys, ElementIndex w) {
  return rs_pair(one_line(sys, w));
}

Partition rs_shape(const CoxeterSystem& sys, ElementIndex w) {
  return rs_pair(sys, w).shape;
}

std::map<Partition, std::vector<ElementIndex>> shape_fibers(const CoxeterSystem& sys) {
  std::map<Partition, std::vector<ElementIndex>> fibers;
  for (ElementIndex w = 0; w < sys.size(); ++w) fibers[rs_shape(sys, w)].push_back(w);
  return fibers;
}

Partition conjugate(const Partition& lambda) {
  Partition out;
  if (lambda.empty()) return out;
  out.resize(static_cast<std::size_t>(lambda.front()), 0);
  for (int part : lambda)
    for (int c = 0; c < part; ++c) ++out[static_cast<std::size_t>(c)];
  return out;
}

Partition parabolic_shape(const CoxeterSystem& sys, GeneratorSet S) {
  if (sys.type_label() != 'A')
    throw std::invalid_argument("parabolic shapes require type A");
  const int n = sys.rank() + 1;
  Partition parts;
  int total = 0;
  int run = 0;
  for (int s = 0; s <= sys.rank(); ++s) {
    const bool in = s < sys.rank() && ((S >> s) & 1u);
    if (in) {
      ++run;
    } else if (run > 0) {
      parts.push_back(run + 1);
      total += run + 1;
      run = 0;
    }
  }
  while (total < n) {
    parts.push_back(1);
    ++total;
  }
  std::sort(parts.rbegin(), parts.rend());
  return parts;
}

bool check_w0S_shape(const CoxeterSystem& sys, GeneratorSet S) {
  const ElementIndex w0S = sys.parabolic_longest(S);
  return rs_shape(sys, w0S) == conjugate(parabolic_shape(sys, S));
}

std::size_t standard_tableau_count(const Partition& lambda) {
  // Hook length formula.
  if (lambda.empty()) return 1;
  const Partition conj = conjugate(lambda);
  std::size_t n = 0;
  for (int p : lambda) n += static_cast<std::size_t>(p);
  // n! / prod hooks, computed exactly with the numerator factored in last.
  unsigned long long numerator = 1;
  std::vector<unsigned long long> hooks;
  for (std::size_t r = 0; r < lambda.size(); ++r)
    for (int c = 0; c < lambda[r]; ++c) {
      const int hook = lambda[r] - c + conj[static_cast<std::size_t>(c)] -
                       static_cast<int>(r) - 1;
      hooks.push_back(static_cast<unsigned long long>(hook));
    }
  unsigned long long denom = 1;
  for (auto h : hooks) denom *= h;
  for (std::size_t k = 2; k <= n; ++k) numerator *= k;
  return static_cast<std::size_t>(numerator / denom);
}

}  // namespace rsk
