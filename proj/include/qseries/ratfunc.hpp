#pragma once

// Exact rational functions of q, kept in factored form:
//
//     c * q^v * prod_f f(q)^{e_f}
//
// where every factor f is a polynomial with f(0) == 1 and degree >= 1, and
// e_f is a (possibly negative) integer. Products only merge exponent maps, so
// the q-shifted factorials that dominate finite identities never need to be
// expanded; sums extract the common factors and expand the rest.
//
// This is the arithmetic behind "both sides are equal as Laurent polynomials":
// a difference is zero exactly when its scalar part c is zero.

#include <map>
#include <string>
#include <vector>

#include "qseries/series.hpp"

namespace qseries {

struct PolyLess {
  bool operator()(const std::vector<Coeff>& a, const std::vector<Coeff>& b) const;
};

class RatFunc {
 public:
  using FactorMap = std::map<std::vector<Coeff>, int, PolyLess>;

  RatFunc() = default;  // zero

  static RatFunc zero() { return {}; }
  static RatFunc one() { return monomial(QMonomial(Coeff(1), 0)); }
  static RatFunc monomial(const QMonomial& m);
  /// 1 - c q^e.
  static RatFunc binomial(const Coeff& c, int e);
  /// sum_i coeffs[i] q^(val + i).
  static RatFunc laurent(int val, const std::vector<Coeff>& coeffs);

  bool is_zero() const { return sgn(c_) == 0; }
  /// Exact valuation (lowest exponent with nonzero coefficient); undefined for zero.
  int val() const { return v_; }
  const Coeff& leading() const { return c_; }
  const FactorMap& factors() const { return factors_; }
  /// True when no factor has a negative exponent.
  bool is_laurent_polynomial() const;
  /// If the value is c*q^m, return it.
  bool as_monomial(QMonomial& out) const;

  RatFunc inverse() const;
  RatFunc pow(long k) const;

  friend RatFunc operator+(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator-(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator-(const RatFunc& a);
  friend RatFunc operator*(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator/(const RatFunc& a, const RatFunc& b);
  friend bool operator==(const RatFunc& a, const RatFunc& b) { return (a - b).is_zero(); }

  /// Multiply by (1 - c q^e)^mult in place.
  void mul_binomial(const Coeff& c, int e, int mult = 1);

  /// Power-series expansion accurate to prec.
  QSeries to_series(int prec) const;
  /// Fully expanded numerator (c q^v prod_{e>0} f^e) as a Laurent coefficient list from val().
  std::vector<Coeff> expanded_numerator() const;

  std::string to_string() const;

 private:
  void add_factor(const std::vector<Coeff>& f, int e);

  Coeff c_{0};
  int v_ = 0;
  FactorMap factors_;
};

}  // namespace qseries
