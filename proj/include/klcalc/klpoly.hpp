#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "klcalc/coxeter.hpp"
#include "klcalc/hecke.hpp"
#include "klcalc/polynomial.hpp"

namespace klpoly {

using coxeter::CoxeterSystem;
using coxeter::ElementIndex;
using polynomials::BigInt;
using polynomials::IntPolynomial;

constexpr std::size_t kDefaultOracleCap = 1000;
constexpr std::uint32_t kCacheFormatVersion = 1;

/*
  Memoized table of all Kazhdan-Lusztig polynomials P_{y,w} of a finite Weyl
  group, with the mu-function and delta(w) = deg P_{e,w}. Built bottom-up in
  length strata by the classical recursion on a left descent of w; rows
  within a stratum only depend on earlier strata, so they may be computed by
  several workers with results identical to the single-threaded run.
*/
class KLTable {
public:
  explicit KLTable(const CoxeterSystem& sys) : sys_(&sys) {}

  void build(int threads = 1);
  bool built() const { return built_; }
  const CoxeterSystem& system() const { return *sys_; }

  // P_{y,w}; the zero polynomial when y is not Bruhat-below w.
  const IntPolynomial& polynomial(ElementIndex y, ElementIndex w) const;
  // Top-window coefficient of P_{y,w} for y < w: the coefficient of
  // q^{(l(w)-l(y)-1)/2}, zero when the parity fails or y is not below w.
  int mu(ElementIndex y, ElementIndex w) const;
  // Symmetrized edge weight mu(x,y) or mu(y,x), whichever is defined.
  int mu_sym(ElementIndex x, ElementIndex y) const;
  int delta(ElementIndex w) const { return delta_[w]; }

  std::span<const std::pair<ElementIndex, int>> mu_row(ElementIndex w) const;

  // Byte-reproducible cache format: header {type, rank, version, count},
  // then one record per (y,w) pair as ShortLex words plus coefficients, in
  // length-then-ShortLex order of w then y.
  void serialize(std::ostream& out) const;
  static KLTable deserialize(std::istream& in, const CoxeterSystem& sys);
  std::string serialize_to_string() const;

private:
  void build_row(ElementIndex w);
  void finalize_row(ElementIndex w);
  const IntPolynomial* find(ElementIndex y, ElementIndex w) const;

  const CoxeterSystem* sys_;
  bool built_ = false;
  std::vector<std::vector<std::pair<ElementIndex, IntPolynomial>>> rows_;
  std::vector<std::vector<std::pair<ElementIndex, int>>> mu_rows_;
  std::vector<int> delta_;
};

int kl_mu_from_polynomial(const IntPolynomial& p, int length_gap);

/*
  Independent oracle for P_{y,w}: expands the bar involution on the standard
  basis and solves for the unique bar-invariant element with unitriangular,
  degree-bounded coefficients. Shares no code path with the KL recursion.
*/
class BarOracle {
public:
  explicit BarOracle(const CoxeterSystem& sys, std::size_t cap = kDefaultOracleCap);

  IntPolynomial kl_polynomial(ElementIndex y, ElementIndex w) const;

private:
  const hecke::HeckeElement& bar_of_standard(ElementIndex w) const;

  const CoxeterSystem* sys_;
  mutable std::vector<hecke::HeckeElement> bar_cache_;
  mutable std::vector<char> bar_ready_;
};

// Laurent coefficient v^{l(w)-l(y)} P_{y,w}(v^{-2}) of the KL basis element.
polynomials::LaurentPolynomial kl_coefficient_laurent(const IntPolynomial& p, int length_gap);

}  // namespace klpoly
