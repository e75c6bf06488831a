#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "freemeixner/rational.hpp"

namespace freemeixner {

/// Truncated power series c_0 + c_1 z + ... + c_N z^N with explicit order N.
///
/// Binary operations require equal truncation orders and throw StructuralError
/// otherwise; nothing is silently truncated or padded.
class FormalSeries {
public:
  explicit FormalSeries(std::size_t order);
  FormalSeries(std::size_t order, std::vector<Rational> coeffs);

  static FormalSeries identity(std::size_t order);  // z
  static FormalSeries constant(std::size_t order, Rational c);

  std::size_t order() const { return order_; }
  const Rational& operator[](std::size_t i) const { return coeffs_.at(i); }
  Rational& operator[](std::size_t i) { return coeffs_.at(i); }
  const std::vector<Rational>& coeffs() const { return coeffs_; }

  FormalSeries operator+(const FormalSeries& o) const;
  FormalSeries operator-(const FormalSeries& o) const;
  FormalSeries operator*(const FormalSeries& o) const;
  FormalSeries operator*(const Rational& s) const;
  bool operator==(const FormalSeries& o) const;

  /// Multiplicative inverse; requires c_0 != 0.
  FormalSeries reciprocal() const;

  /// this(inner(z)); requires inner[0] == 0.
  FormalSeries compose(const FormalSeries& inner) const;

  std::string str() const;

private:
  void require_same_order(const FormalSeries& o) const;
  std::size_t order_;
  std::vector<Rational> coeffs_;
};

/// Compositional inverse: requires s[0] == 0 and s[1] != 0 (SingularSeriesError otherwise).
FormalSeries series_compose_inverse(const FormalSeries& s, std::size_t order);

/// Dense univariate polynomial with rational coefficients, coeffs()[i] of x^i.
class Polynomial {
public:
  Polynomial() = default;
  explicit Polynomial(std::vector<Rational> coeffs);
  static Polynomial monomial(std::size_t degree, Rational c = 1);

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }  // -1 for zero
  bool is_zero() const { return coeffs_.empty(); }
  bool is_monic() const { return !coeffs_.empty() && coeffs_.back() == 1; }
  Rational coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : Rational(0); }
  const std::vector<Rational>& coeffs() const { return coeffs_; }

  Polynomial operator+(const Polynomial& o) const;
  Polynomial operator-(const Polynomial& o) const;
  Polynomial operator*(const Polynomial& o) const;
  Polynomial operator*(const Rational& s) const;
  bool operator==(const Polynomial& o) const { return coeffs_ == o.coeffs_; }

  Polynomial shift_up() const;                    // x * p
  Polynomial free_difference_quotient() const;    // (p(x) - p(0)) / x
  Rational evaluate(const Rational& x) const;

  std::string str() const;

private:
  void trim();
  std::vector<Rational> coeffs_;
};

}  // namespace freemeixner
