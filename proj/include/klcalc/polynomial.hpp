#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <limits>
#include <map>
#include <string>
#include <vector>

namespace polynomials {

// Exact integer coefficients. Kazhdan-Lusztig coefficients stay small in
// practice, but nothing here may overflow by construction.
using BigInt = boost::multiprecision::cpp_int;

/*
  Polynomial in q with exact integer coefficients, dense representation.
  Invariant: no trailing zero coefficient; the zero polynomial has an empty
  coefficient vector and degree kMinusInfinity.
*/
class IntPolynomial {
public:
  static constexpr int kMinusInfinity = std::numeric_limits<int>::min();

  IntPolynomial() = default;
  explicit IntPolynomial(BigInt constant);
  explicit IntPolynomial(std::vector<BigInt> coeffs);  // normalizes

  static IntPolynomial zero() { return IntPolynomial(); }
  static IntPolynomial one();
  static IntPolynomial q_power(int k);

  bool is_zero() const { return coeffs_.empty(); }
  bool is_one() const;
  int degree() const;  // kMinusInfinity for the zero polynomial
  const BigInt& coeff(int k) const;  // 0 outside the support
  const std::vector<BigInt>& coeffs() const { return coeffs_; }

  IntPolynomial& operator+=(const IntPolynomial& other);
  IntPolynomial& operator-=(const IntPolynomial& other);
  // this += scale * q^shift * other
  void add_scaled(const IntPolynomial& other, const BigInt& scale, int shift);

  friend IntPolynomial operator+(IntPolynomial a, const IntPolynomial& b) {
    a += b;
    return a;
  }
  friend IntPolynomial operator-(IntPolynomial a, const IntPolynomial& b) {
    a -= b;
    return a;
  }
  friend IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b);

  bool operator==(const IntPolynomial& other) const { return coeffs_ == other.coeffs_; }
  bool operator!=(const IntPolynomial& other) const { return !(*this == other); }

  bool nonnegative() const;  // all coefficients >= 0

  std::string to_string(const std::string& var = "q") const;

private:
  void normalize();
  std::vector<BigInt> coeffs_;
};

/*
  Laurent polynomial in v with exact integer coefficients. Stored as a dense
  window [min_exp, min_exp + coeffs.size()) with nonzero first and last
  entries; the zero polynomial has an empty window.
*/
class LaurentPolynomial {
public:
  LaurentPolynomial() = default;
  LaurentPolynomial(int min_exp, std::vector<BigInt> coeffs);  // normalizes

  static LaurentPolynomial zero() { return LaurentPolynomial(); }
  static LaurentPolynomial one();
  static LaurentPolynomial v_power(int k, BigInt coeff = 1);

  bool is_zero() const { return coeffs_.empty(); }
  bool is_one() const;
  int min_exponent() const;  // only valid when nonzero
  int max_exponent() const;
  const BigInt& coeff(int exponent) const;

  LaurentPolynomial& operator+=(const LaurentPolynomial& other);
  LaurentPolynomial& operator-=(const LaurentPolynomial& other);

  friend LaurentPolynomial operator+(LaurentPolynomial a, const LaurentPolynomial& b) {
    a += b;
    return a;
  }
  friend LaurentPolynomial operator-(LaurentPolynomial a, const LaurentPolynomial& b) {
    a -= b;
    return a;
  }
  friend LaurentPolynomial operator*(const LaurentPolynomial& a, const LaurentPolynomial& b);
  LaurentPolynomial operator-() const;

  LaurentPolynomial& scale(const BigInt& c);
  LaurentPolynomial& shift(int k);  // multiply by v^k

  // The ring involution v -> v^{-1}.
  LaurentPolynomial bar() const;
  BigInt eval_one() const;  // value at v = 1

  bool operator==(const LaurentPolynomial& other) const {
    return min_exp_ == other.min_exp_ && coeffs_ == other.coeffs_;
  }
  bool operator!=(const LaurentPolynomial& other) const { return !(*this == other); }

  std::map<int, BigInt> terms() const;  // exponent -> coefficient, nonzero only
  std::string to_string(const std::string& var = "v") const;

private:
  void normalize();
  int min_exp_ = 0;
  std::vector<BigInt> coeffs_;
};

}  // namespace polynomials
