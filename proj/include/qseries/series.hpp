#pragma once

// Truncated Laurent series in q over exact rationals.
//
// A QSeries stores the coefficients of q^val .. q^prec densely. Everything
// above prec is unknown. The window may be empty (val == prec + 1), which
// means "zero up to prec". All operations propagate precision pessimistically
// so that a coefficient reported inside the window is always exact.

#include <gmpxx.h>

#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "qseries/error.hpp"

namespace qseries {

using Coeff = mpq_class;

std::string to_string(const Coeff& c);
Coeff parse_coeff(const std::string& text);

/// Large sentinel used as the precision of exact (finite) quantities.
inline constexpr int kExactPrec = std::numeric_limits<int>::max() / 4;

/// c * q^m. The zero monomial has c == 0 (m is then irrelevant).
struct QMonomial {
  Coeff c{0};
  int m = 0;

  QMonomial() = default;
  QMonomial(Coeff coeff, int exp) : c(std::move(coeff)), m(exp) {}

  static QMonomial scalar(const Coeff& v) { return {v, 0}; }
  static QMonomial q_power(int e) { return {Coeff(1), e}; }

  bool is_zero() const { return sgn(c) == 0; }
  bool is_scalar() const { return is_zero() || m == 0; }
  /// True for an integer scalar (m == 0, denominator 1).
  bool is_integer() const;
  long as_integer() const;

  QMonomial operator*(const QMonomial& o) const;
  QMonomial operator/(const QMonomial& o) const;
  QMonomial operator-() const { return {-c, m}; }
  QMonomial pow(long k) const;
  bool operator==(const QMonomial& o) const;

  /// "c*q^m" in the DSL binding syntax.
  std::string to_string() const;
};

class QSeries {
 public:
  /// Zero known up to exponent 0.
  QSeries() : val_(1), prec_(0) {}

  static QSeries zero(int prec);
  static QSeries one(int prec);
  static QSeries monomial(const QMonomial& m, int prec);
  static QSeries from_coeffs(int val, std::vector<Coeff> coeffs, int prec);

  int val() const { return val_; }
  int prec() const { return prec_; }
  bool is_zero() const { return coeffs_.empty(); }
  std::span<const Coeff> coeffs() const { return coeffs_; }

  /// Exact coefficient of q^e; zero below val. Throws PrecisionExceeded above prec.
  Coeff coefficient(int e) const;

  /// Same window restricted to exponents <= p (p may exceed prec only as a no-op).
  QSeries truncated(int p) const;
  /// Multiply by q^k.
  QSeries shifted(int k) const;
  QSeries scaled(const Coeff& s) const;

  /// True when every exponent known on both sides carries the same coefficient.
  bool agrees_with(const QSeries& other) const;

  /// In-place multiplication by (1 - c q^e).
  void mul_binomial(const Coeff& c, int e);
  /// In-place division by (1 - c q^e); ZeroSeries when the binomial is 0.
  void div_binomial(const Coeff& c, int e);
  void scale_inplace(const Coeff& s);
  void shift_inplace(int k);
  void truncate_inplace(int p);

  std::string to_string() const;

 private:
  QSeries(int val, int prec, std::vector<Coeff> coeffs)
      : val_(val), prec_(prec), coeffs_(std::move(coeffs)) {}
  void normalize();
  friend QSeries operator+(const QSeries&, const QSeries&);
  friend QSeries operator*(const QSeries&, const QSeries&);
  friend QSeries invert(const QSeries&, int);
  friend QSeries substitute_power(const QSeries&, int);

  int val_;
  int prec_;
  std::vector<Coeff> coeffs_;
};

QSeries operator+(const QSeries& a, const QSeries& b);
QSeries operator-(const QSeries& a);
QSeries operator-(const QSeries& a, const QSeries& b);
/// Cauchy product; prec = min(a.prec + b.val, b.prec + a.val).
QSeries operator*(const QSeries& a, const QSeries& b);

inline QSeries add(const QSeries& a, const QSeries& b) { return a + b; }
inline QSeries mul(const QSeries& a, const QSeries& b) { return a * b; }

/// b with a*b = 1 up to min(prec, a.prec - 2*a.val).
QSeries invert(const QSeries& a, int prec);
/// q -> q^k.
QSeries substitute_power(const QSeries& a, int k);
/// q -> -q.
QSeries substitute_negate(const QSeries& a);
/// Non-negative integer power.
QSeries power(const QSeries& a, unsigned k);

/// f(x) = sum_k f_k x^k with QSeries coefficients.
class BiSeries {
 public:
  BiSeries() = default;
  explicit BiSeries(std::vector<QSeries> coeffs) : coeffs_(std::move(coeffs)) {}

  static BiSeries constant(const QSeries& s) { return BiSeries({s}); }
  static BiSeries x(int prec) { return BiSeries({QSeries::zero(prec), QSeries::one(prec)}); }

  /// Degree bound K (coefficient list has K+1 entries); -1 for the empty list.
  int degree_bound() const { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<QSeries>& coeffs() const { return coeffs_; }

  friend BiSeries operator+(const BiSeries& a, const BiSeries& b);
  friend BiSeries operator-(const BiSeries& a);
  friend BiSeries operator*(const BiSeries& a, const BiSeries& b);

 private:
  std::vector<QSeries> coeffs_;
};

/// D_{q,x} f = (f(x) - f(qx)) / x.
BiSeries bi_qderivative(const BiSeries& f);
/// sum_k f_k x0^k, accurate to prec where the coefficients allow.
QSeries bi_eval(const BiSeries& f, const QMonomial& x0, int prec);

}  // namespace qseries
