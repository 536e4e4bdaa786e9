#include "klcalc/hecke.hpp"

#include <stdexcept>

#include "klcalc/klpoly.hpp"

namespace hecke {

namespace {
const LaurentPolynomial kZeroLaurent;
}

HeckeElement HeckeElement::standard_basis(const CoxeterSystem& sys, ElementIndex w) {
  HeckeElement e(sys);
  e.terms_.emplace(w, LaurentPolynomial::one());
  return e;
}

const LaurentPolynomial& HeckeElement::coeff(ElementIndex w) const {
  const auto it = terms_.find(w);
  return it == terms_.end() ? kZeroLaurent : it->second;
}

void HeckeElement::add_term(ElementIndex w, const LaurentPolynomial& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.emplace(w, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

void HeckeElement::check_same(const HeckeElement& other) const {
  if (sys_ != other.sys_) throw std::invalid_argument("Hecke elements from different systems");
}

HeckeElement& HeckeElement::operator+=(const HeckeElement& other) {
  check_same(other);
  for (const auto& [w, c] : other.terms_) add_term(w, c);
  return *this;
}

HeckeElement& HeckeElement::operator-=(const HeckeElement& other) {
  check_same(other);
  for (const auto& [w, c] : other.terms_) add_term(w, -c);
  return *this;
}

HeckeElement& HeckeElement::scale(const LaurentPolynomial& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [w, x] : terms_) x = x * c;
  return *this;
}

bool HeckeElement::operator==(const HeckeElement& other) const {
  return sys_ == other.sys_ && terms_ == other.terms_;
}

std::vector<std::pair<coxeter::Word, std::map<int, BigInt>>> HeckeElement::serialized_terms()
    const {
  std::vector<std::pair<coxeter::Word, std::map<int, BigInt>>> out;
  out.reserve(terms_.size());
  for (const auto& [w, c] : terms_) out.emplace_back(sys_->word_vector(w), c.terms());
  return out;
}

HeckeElement multiply_generator_right(const HeckeElement& a, Generator s) {
  const CoxeterSystem& W = a.system();
  HeckeElement out(W);
  const LaurentPolynomial vdiff =
      LaurentPolynomial::v_power(-1) - LaurentPolynomial::v_power(1);
  for (const auto& [w, c] : a.terms()) {
    const ElementIndex ws = W.right_mult(w, s);
    if (W.length(ws) > W.length(w)) {
      out.add_term(ws, c);
    } else {
      out.add_term(ws, c);
      out.add_term(w, c * vdiff);
    }
  }
  return out;
}

HeckeElement multiply_generator_left(Generator s, const HeckeElement& a) {
  const CoxeterSystem& W = a.system();
  HeckeElement out(W);
  const LaurentPolynomial vdiff =
      LaurentPolynomial::v_power(-1) - LaurentPolynomial::v_power(1);
  for (const auto& [w, c] : a.terms()) {
    const ElementIndex sw = W.left_mult(s, w);
    if (W.length(sw) > W.length(w)) {
      out.add_term(sw, c);
    } else {
      out.add_term(sw, c);
      out.add_term(w, c * vdiff);
    }
  }
  return out;
}

HeckeElement multiply_generator_inverse_right(const HeckeElement& a, Generator s) {
  // H_s^{-1} = H_s + (v - v^{-1}) H_e.
  HeckeElement out = multiply_generator_right(a, s);
  HeckeElement correction = a;
  correction.scale(LaurentPolynomial::v_power(1) - LaurentPolynomial::v_power(-1));
  out += correction;
  return out;
}

HeckeElement multiply_standard(const HeckeElement& a, const HeckeElement& b) {
  if (&a.system() != &b.system())
    throw std::invalid_argument("Hecke elements from different systems");
  const CoxeterSystem& W = a.system();
  HeckeElement out(W);
  for (const auto& [w, c] : b.terms()) {
    HeckeElement part = a;
    for (std::uint8_t s : W.word(w)) part = multiply_generator_right(part, s);
    part.scale(c);
    out += part;
  }
  return out;
}

HeckeElement sigma(const HeckeElement& a) {
  const CoxeterSystem& W = a.system();
  HeckeElement out(W);
  for (const auto& [w, c] : a.terms()) out.add_term(W.inverse(w), c);
  return out;
}

HeckeElement kl_basis(const klpoly::KLTable& table, ElementIndex w) {
  const CoxeterSystem& W = table.system();
  HeckeElement out(W);
  for (ElementIndex y = 0; y <= w; ++y) {
    const auto& p = table.polynomial(y, w);
    if (p.is_zero()) continue;
    out.add_term(y, klpoly::kl_coefficient_laurent(p, W.length(w) - W.length(y)));
  }
  return out;
}

std::map<ElementIndex, LaurentPolynomial> kl_expand(const klpoly::KLTable& table,
                                                    HeckeElement a) {
  std::map<ElementIndex, LaurentPolynomial> coords;
  while (!a.is_zero()) {
    const auto top = std::prev(a.terms().end());
    const ElementIndex w = top->first;
    const LaurentPolynomial c = top->second;
    coords.emplace(w, c);
    HeckeElement cw = kl_basis(table, w);
    cw.scale(c);
    a -= cw;
    if (!a.is_zero() && std::prev(a.terms().end())->first >= w)
      throw coxeter::consistency_error("KL expansion did not strictly descend");
  }
  return coords;
}

namespace {

std::map<ElementIndex, int> theta_from_product(const klpoly::KLTable& table,
                                               const HeckeElement& product) {
  std::map<ElementIndex, int> out;
  for (const auto& [x, c] : kl_expand(table, product)) {
    const BigInt m = c.eval_one();
    if (m == 0) continue;
    if (m < 0) throw coxeter::consistency_error("negative functor multiplicity");
    out[x] = static_cast<int>(m);
  }
  return out;
}

}  // namespace

std::map<ElementIndex, int> theta_composition_right(const klpoly::KLTable& table,
                                                    ElementIndex w, Generator s) {
  if (s < 0 || s >= table.system().rank())
    throw std::invalid_argument("generator index out of range");
  HeckeElement cw = kl_basis(table, w);
  // C'_s = H_s + v H_e, so C'_w C'_s = C'_w H_s + v C'_w.
  HeckeElement prod = multiply_generator_right(cw, s);
  cw.scale(LaurentPolynomial::v_power(1));
  prod += cw;
  return theta_from_product(table, prod);
}

std::map<ElementIndex, int> theta_composition_left(const klpoly::KLTable& table,
                                                   ElementIndex w, Generator s) {
  if (s < 0 || s >= table.system().rank())
    throw std::invalid_argument("generator index out of range");
  HeckeElement cw = kl_basis(table, w);
  HeckeElement prod = multiply_generator_left(s, cw);
  cw.scale(LaurentPolynomial::v_power(1));
  prod += cw;
  return theta_from_product(table, prod);
}

}  // namespace hecke
