#include "klcalc/polynomial.hpp"

#include <sstream>
#include <stdexcept>

namespace polynomials {

namespace {
const BigInt kZero = 0;

std::string coeff_term(const BigInt& c, int exp, const std::string& var, bool leading) {
  std::ostringstream os;
  BigInt a = c;
  if (leading) {
    if (a < 0) {
      os << "-";
      a = -a;
    }
  } else {
    os << (a < 0 ? " - " : " + ");
    if (a < 0) a = -a;
  }
  if (exp == 0) {
    os << a.str();
  } else {
    if (a != 1) os << a.str() << "*";
    os << var;
    if (exp != 1) os << "^" << exp;
  }
  return os.str();
}
}  // namespace

IntPolynomial::IntPolynomial(BigInt constant) {
  if (constant != 0) coeffs_.push_back(std::move(constant));
}

IntPolynomial::IntPolynomial(std::vector<BigInt> coeffs) : coeffs_(std::move(coeffs)) {
  normalize();
}

IntPolynomial IntPolynomial::one() { return IntPolynomial(BigInt(1)); }

IntPolynomial IntPolynomial::q_power(int k) {
  if (k < 0) throw std::invalid_argument("q_power: negative exponent");
  std::vector<BigInt> c(static_cast<std::size_t>(k) + 1);
  c.back() = 1;
  return IntPolynomial(std::move(c));
}

bool IntPolynomial::is_one() const { return coeffs_.size() == 1 && coeffs_[0] == 1; }

int IntPolynomial::degree() const {
  return coeffs_.empty() ? kMinusInfinity : static_cast<int>(coeffs_.size()) - 1;
}

const BigInt& IntPolynomial::coeff(int k) const {
  if (k < 0 || static_cast<std::size_t>(k) >= coeffs_.size()) return kZero;
  return coeffs_[static_cast<std::size_t>(k)];
}

void IntPolynomial::normalize() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

IntPolynomial& IntPolynomial::operator+=(const IntPolynomial& other) {
  add_scaled(other, 1, 0);
  return *this;
}

IntPolynomial& IntPolynomial::operator-=(const IntPolynomial& other) {
  add_scaled(other, -1, 0);
  return *this;
}

void IntPolynomial::add_scaled(const IntPolynomial& other, const BigInt& scale, int shift) {
  if (other.is_zero() || scale == 0) return;
  if (shift < 0) throw std::invalid_argument("add_scaled: negative shift");
  const std::size_t need = other.coeffs_.size() + static_cast<std::size_t>(shift);
  if (coeffs_.size() < need) coeffs_.resize(need);
  for (std::size_t k = 0; k < other.coeffs_.size(); ++k)
    coeffs_[k + static_cast<std::size_t>(shift)] += scale * other.coeffs_[k];
  normalize();
}

IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b) {
  if (a.is_zero() || b.is_zero()) return IntPolynomial();
  std::vector<BigInt> c(a.coeffs_.size() + b.coeffs_.size() - 1);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
  return IntPolynomial(std::move(c));
}

bool IntPolynomial::nonnegative() const {
  for (const auto& c : coeffs_)
    if (c < 0) return false;
  return true;
}

std::string IntPolynomial::to_string(const std::string& var) const {
  if (is_zero()) return "0";
  std::string out;
  bool leading = true;
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    if (coeffs_[k] == 0) continue;
    out += coeff_term(coeffs_[k], static_cast<int>(k), var, leading);
    leading = false;
  }
  return out;
}

LaurentPolynomial::LaurentPolynomial(int min_exp, std::vector<BigInt> coeffs)
    : min_exp_(min_exp), coeffs_(std::move(coeffs)) {
  normalize();
}

LaurentPolynomial LaurentPolynomial::one() { return v_power(0); }

LaurentPolynomial LaurentPolynomial::v_power(int k, BigInt coeff) {
  if (coeff == 0) return LaurentPolynomial();
  return LaurentPolynomial(k, {std::move(coeff)});
}

bool LaurentPolynomial::is_one() const {
  return coeffs_.size() == 1 && min_exp_ == 0 && coeffs_[0] == 1;
}

int LaurentPolynomial::min_exponent() const {
  if (is_zero()) throw std::logic_error("min_exponent of zero");
  return min_exp_;
}

int LaurentPolynomial::max_exponent() const {
  if (is_zero()) throw std::logic_error("max_exponent of zero");
  return min_exp_ + static_cast<int>(coeffs_.size()) - 1;
}

const BigInt& LaurentPolynomial::coeff(int exponent) const {
  const long k = static_cast<long>(exponent) - min_exp_;
  if (k < 0 || k >= static_cast<long>(coeffs_.size())) return kZero;
  return coeffs_[static_cast<std::size_t>(k)];
}

void LaurentPolynomial::normalize() {
  std::size_t lead = 0;
  while (lead < coeffs_.size() && coeffs_[lead] == 0) ++lead;
  if (lead == coeffs_.size()) {
    coeffs_.clear();
    min_exp_ = 0;
    return;
  }
  if (lead > 0) {
    coeffs_.erase(coeffs_.begin(), coeffs_.begin() + static_cast<long>(lead));
    min_exp_ += static_cast<int>(lead);
  }
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

LaurentPolynomial& LaurentPolynomial::operator+=(const LaurentPolynomial& other) {
  if (other.is_zero()) return *this;
  if (is_zero()) {
    *this = other;
    return *this;
  }
  const int lo = std::min(min_exp_, other.min_exp_);
  const int hi = std::max(max_exponent(), other.max_exponent());
  std::vector<BigInt> c(static_cast<std::size_t>(hi - lo + 1));
  for (std::size_t k = 0; k < coeffs_.size(); ++k)
    c[static_cast<std::size_t>(min_exp_ - lo) + k] += coeffs_[k];
  for (std::size_t k = 0; k < other.coeffs_.size(); ++k)
    c[static_cast<std::size_t>(other.min_exp_ - lo) + k] += other.coeffs_[k];
  min_exp_ = lo;
  coeffs_ = std::move(c);
  normalize();
  return *this;
}

LaurentPolynomial& LaurentPolynomial::operator-=(const LaurentPolynomial& other) {
  return *this += -other;
}

LaurentPolynomial LaurentPolynomial::operator-() const {
  LaurentPolynomial r = *this;
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

LaurentPolynomial operator*(const LaurentPolynomial& a, const LaurentPolynomial& b) {
  if (a.is_zero() || b.is_zero()) return LaurentPolynomial();
  std::vector<BigInt> c(a.coeffs_.size() + b.coeffs_.size() - 1);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
  return LaurentPolynomial(a.min_exp_ + b.min_exp_, std::move(c));
}

LaurentPolynomial& LaurentPolynomial::scale(const BigInt& c) {
  if (c == 0) {
    coeffs_.clear();
    min_exp_ = 0;
    return *this;
  }
  for (auto& x : coeffs_) x *= c;
  return *this;
}

LaurentPolynomial& LaurentPolynomial::shift(int k) {
  if (!is_zero()) min_exp_ += k;
  return *this;
}

LaurentPolynomial LaurentPolynomial::bar() const {
  if (is_zero()) return *this;
  std::vector<BigInt> c(coeffs_.rbegin(), coeffs_.rend());
  return LaurentPolynomial(-max_exponent(), std::move(c));
}

BigInt LaurentPolynomial::eval_one() const {
  BigInt s = 0;
  for (const auto& c : coeffs_) s += c;
  return s;
}

std::map<int, BigInt> LaurentPolynomial::terms() const {
  std::map<int, BigInt> t;
  for (std::size_t k = 0; k < coeffs_.size(); ++k)
    if (coeffs_[k] != 0) t[min_exp_ + static_cast<int>(k)] = coeffs_[k];
  return t;
}

std::string LaurentPolynomial::to_string(const std::string& var) const {
  if (is_zero()) return "0";
  std::string out;
  bool leading = true;
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    if (coeffs_[k] == 0) continue;
    out += coeff_term(coeffs_[k], min_exp_ + static_cast<int>(k), var, leading);
    leading = false;
  }
  return out;
}

}  // namespace polynomials
