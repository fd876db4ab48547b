#pragma once

// Exact Laurent polynomials in a single variable (the Kauffman variable A by
// default) with arbitrary-precision integer coefficients, plus Gaussian
// integers for exact evaluation at A^2 in {i, -i}.

#include <boost/multiprecision/cpp_int.hpp>

#include <map>
#include <string>
#include <string_view>

namespace kd {

using BigInt = boost::multiprecision::cpp_int;

class LaurentPoly {
 public:
  using Terms = std::map<int, BigInt>;

  LaurentPoly() = default;

  static LaurentPoly monomial(const BigInt& coeff, int exponent);
  static LaurentPoly constant(const BigInt& c) { return monomial(c, 0); }
  /// The loop value -A^2 - A^-2.
  static LaurentPoly delta();

  /// Canonical terms: exponent -> nonzero coefficient.
  const Terms& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  std::size_t term_count() const noexcept { return terms_.size(); }
  int min_exponent() const;
  int max_exponent() const;

  BigInt coefficient_at(int exponent) const;

  LaurentPoly& operator+=(const LaurentPoly& rhs);
  LaurentPoly& operator-=(const LaurentPoly& rhs);
  LaurentPoly& operator*=(const LaurentPoly& rhs);

  friend LaurentPoly operator+(LaurentPoly lhs, const LaurentPoly& rhs) { return lhs += rhs; }
  friend LaurentPoly operator-(LaurentPoly lhs, const LaurentPoly& rhs) { return lhs -= rhs; }
  friend LaurentPoly operator*(const LaurentPoly& lhs, const LaurentPoly& rhs);
  LaurentPoly operator-() const;

  /// Adds c * A^exponent in place.
  void add_term(const BigInt& c, int exponent);
  /// Multiplication by A^k.
  LaurentPoly shifted(int k) const;
  /// Scalar multiple.
  LaurentPoly scaled(const BigInt& c) const;
  /// Integer power; negative exponents are accepted only for monomials.
  LaurentPoly pow(int n) const;
  /// The substitution A -> A^k (k may be negative; k = -1 mirrors).
  LaurentPoly substitute_power(int k) const;

  bool operator==(const LaurentPoly& rhs) const { return terms_ == rhs.terms_; }

  /// Renders as `c*A^k` terms by descending exponent, e.g. `A^5 + A^-3 - A^-7`.
  std::string to_string(char var = 'A') const;
  /// Parses the rendering above (either term order, optional `*`, spaces).
  static LaurentPoly parse(std::string_view text, char var = 'A');

 private:
  Terms terms_;
};

std::ostream& operator<<(std::ostream& os, const LaurentPoly& p);

struct GaussianInt {
  BigInt re;
  BigInt im;

  GaussianInt() = default;
  GaussianInt(BigInt r, BigInt i = 0) : re(std::move(r)), im(std::move(i)) {}

  static GaussianInt i_unit() { return {0, 1}; }

  BigInt norm() const { return re * re + im * im; }
  GaussianInt conj() const { return {re, -im}; }
  bool is_unit() const { return norm() == 1; }

  friend GaussianInt operator+(const GaussianInt& a, const GaussianInt& b) {
    return {a.re + b.re, a.im + b.im};
  }
  friend GaussianInt operator-(const GaussianInt& a, const GaussianInt& b) {
    return {a.re - b.re, a.im - b.im};
  }
  friend GaussianInt operator*(const GaussianInt& a, const GaussianInt& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  GaussianInt operator-() const { return {-re, -im}; }
  bool operator==(const GaussianInt&) const = default;

  /// Integer power; negative powers require a unit base.
  GaussianInt pow(long n) const;
  std::string to_string() const;
};

struct A2Evaluation {
  int parity = 0;  // p = A^parity * q(A^2)
  GaussianInt value;  // q(z)
};

/// Writes p = A^parity * q(A^2) and evaluates q at A^2 := z exactly.
/// Throws BadInput on mixed exponent parity, and when a negative power of a
/// non-unit z would be needed.
A2Evaluation factor_and_eval_A2(const LaurentPoly& p, const GaussianInt& z);

/// Floor square root of a nonnegative integer; `exact` set when r*r == n.
BigInt isqrt(const BigInt& n, bool* exact = nullptr);

}  // namespace kd
