#pragma once

#include <map>

#include "klcalc/coxeter.hpp"
#include "klcalc/polynomial.hpp"

namespace klpoly {
class KLTable;
}

namespace hecke {

using coxeter::CoxeterSystem;
using coxeter::ElementIndex;
using coxeter::Generator;
using polynomials::BigInt;
using polynomials::LaurentPolynomial;

/*
  Element of the Hecke algebra of W over Z[v, v^{-1}], in Soergel's
  normalization: H_s^2 = (v^{-1} - v) H_s + H_e. Sparse map from group
  elements to Laurent coefficients; zero coefficients are pruned.
*/
class HeckeElement {
public:
  explicit HeckeElement(const CoxeterSystem& sys) : sys_(&sys) {}

  static HeckeElement standard_basis(const CoxeterSystem& sys, ElementIndex w);

  const CoxeterSystem& system() const { return *sys_; }
  bool is_zero() const { return terms_.empty(); }
  const std::map<ElementIndex, LaurentPolynomial>& terms() const { return terms_; }
  const LaurentPolynomial& coeff(ElementIndex w) const;

  void add_term(ElementIndex w, const LaurentPolynomial& c);
  HeckeElement& operator+=(const HeckeElement& other);
  HeckeElement& operator-=(const HeckeElement& other);
  HeckeElement& scale(const LaurentPolynomial& c);

  bool operator==(const HeckeElement& other) const;
  bool operator!=(const HeckeElement& other) const { return !(*this == other); }

  // Wire form: one (ShortLex word, exponent -> coefficient) entry per term.
  std::vector<std::pair<coxeter::Word, std::map<int, BigInt>>> serialized_terms() const;

private:
  void check_same(const HeckeElement& other) const;
  const CoxeterSystem* sys_;
  std::map<ElementIndex, LaurentPolynomial> terms_;
};

// a * H_s and H_s * a via the defining relations.
HeckeElement multiply_generator_right(const HeckeElement& a, Generator s);
HeckeElement multiply_generator_left(Generator s, const HeckeElement& a);
// a * H_s^{-1}, with H_s^{-1} = H_s + (v - v^{-1}) H_e.
HeckeElement multiply_generator_inverse_right(const HeckeElement& a, Generator s);

// Product in the standard basis, expanding the right factor along reduced words.
HeckeElement multiply_standard(const HeckeElement& a, const HeckeElement& b);

// The antiautomorphism fixing all H_s; sends H_w to H_{w^{-1}}.
HeckeElement sigma(const HeckeElement& a);

// Kazhdan-Lusztig basis element C'_w = sum_{y <= w} v^{l(w)-l(y)} P_{y,w}(v^{-2}) H_y.
HeckeElement kl_basis(const klpoly::KLTable& table, ElementIndex w);

// Coordinates of a in the KL basis (triangular elimination from the top).
std::map<ElementIndex, LaurentPolynomial> kl_expand(const klpoly::KLTable& table,
                                                    HeckeElement a);

/*
  Multiplicities of the indecomposable projective functors in a composition
  with a wall-crossing functor, read off from the KL-basis product evaluated
  at v = 1. The right version decomposes theta_s o theta_w via C'_w * C'_s,
  the left version decomposes theta_w o theta_s via C'_s * C'_w.
*/
std::map<ElementIndex, int> theta_composition_right(const klpoly::KLTable& table,
                                                    ElementIndex w, Generator s);
std::map<ElementIndex, int> theta_composition_left(const klpoly::KLTable& table,
                                                   ElementIndex w, Generator s);

}  // namespace hecke
