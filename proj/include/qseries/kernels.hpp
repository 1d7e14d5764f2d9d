#pragma once

// q-shifted factorials, basic hypergeometric series, theta functions and
// valuation-guarded summation.

#include <functional>
#include <optional>
#include <vector>

#include "qseries/ratfunc.hpp"
#include "qseries/series.hpp"

namespace qseries {

/// Runtime contract for formally convergent infinite sums.
struct SumGuard {
  int target_prec = 0;
  int stall_window = 8;
  int hard_cap = 10000;
};

/// Tracks term valuations of an infinite sum and decides when to stop.
///
/// A term counts as "quiet" when its valuation exceeds the target. The sum
/// stops after kQuietRun consecutive quiet terms. A stall is reported when the
/// running record of min(val, target + 1) is not beaten for stall_window
/// consecutive terms while the sum is still loud.
class SumTracker {
 public:
  static constexpr int kQuietRun = 3;

  explicit SumTracker(const SumGuard& guard);
  /// Feed the valuation of the next term (std::nullopt for an exactly zero
  /// term). Returns false once summation may stop.
  bool observe(std::optional<int> val);
  long terms() const { return terms_; }

 private:
  SumGuard guard_;
  long terms_ = 0;
  int quiet_ = 0;
  int since_record_ = 0;
  long record_ = 0;
  bool have_record_ = false;
};

/// r-phi-s with base q^base and argument arg.
struct PhiSpec {
  std::vector<QMonomial> tops;
  std::vector<QMonomial> bottoms;
  int base = 1;
  QMonomial arg;

  /// Exponent 1 + s - r of the compensating factor ((-1)^n q^{base n(n-1)/2}).
  int compensating_exponent() const {
    return 1 + static_cast<int>(bottoms.size()) - static_cast<int>(tops.size());
  }
};

/// (x; q^k)_n. Negative n uses (x; q^k)_{-n} = 1 / (x q^{-kn}; q^k)_n.
QSeries qpoch_finite(const QMonomial& x, int k, long n, int prec);
RatFunc qpoch_finite_exact(const QMonomial& x, int k, long n);
/// (x; q^k)_inf; requires x.m >= 1 unless x is zero.
QSeries qpoch_inf(const QMonomial& x, int k, int prec);

QSeries rphi(const PhiSpec& spec, const SumGuard& guard);
/// Exact value of a terminating series; NotFinite otherwise.
RatFunc rphi_exact(const PhiSpec& spec);

QSeries theta_phi(int prec);
QSeries theta_psi(int prec);

/// S_n = sum_{j=-n}^{n} (-1)^j q^{-j^2}; T_n = sum_{j=0}^{n} q^{-j(j+1)/2}.
/// Both vanish for n < 0.
RatFunc finite_theta_S(long n);
RatFunc finite_theta_T(long n);

enum class RangeKind { Symmetric, Half, Double };

/// Index range of the inner sum for row n.
std::pair<long, long> inner_range(RangeKind kind, long n);

using HeckeTerm = std::function<QMonomial(long n, long j)>;
/// Optional per-row series factor; called with the row index and the
/// absolute precision the factor must reach (never negative).
using HeckeRowFactor = std::function<QSeries(long n, int prec)>;

QSeries hecke_double_sum(const HeckeTerm& term, RangeKind kind, const SumGuard& guard,
                         const HeckeRowFactor& row_factor = {});

/// c q^v * unit, with the unit series known to a fixed relative precision.
/// Multiplying by binomials keeps the relative precision, which is what makes
/// long products of q-shifted factorials cheap and sound.
class ProductAccumulator {
 public:
  explicit ProductAccumulator(int rel_prec);

  void mul_monomial(const QMonomial& m, bool divide = false);
  /// (1 - c q^e)^{+-1}.
  void mul_binomial(const Coeff& c, int e, bool divide = false);
  /// (x; q^k)_n^{+-1}, any integer n.
  void mul_qpoch(const QMonomial& x, int k, long n, bool divide = false);
  /// (x; q^k)_inf^{+-1}; x.m >= 1.
  void mul_qpoch_inf(const QMonomial& x, int k, bool divide = false);
  /// General series factor; the relative precision shrinks to what s supports.
  void mul_series(const QSeries& s, bool divide = false);

  bool is_zero() const { return zero_; }
  /// Exact valuation so far (meaningless once zero).
  int val() const { return v_; }
  int rel_prec() const { return rel_; }
  QSeries result() const;

 private:
  Coeff c_{1};
  int v_ = 0;
  int rel_;
  bool zero_ = false;
  QSeries unit_;
};

/// Accumulates monomials and series into a Laurent window ending at prec.
/// The low end of the window grows on demand.
class LaurentAccumulator {
 public:
  explicit LaurentAccumulator(int prec) : prec_(prec), lo_(prec + 1) {}

  void add(const Coeff& c, int e);
  /// Adds s; the accumulated precision drops to s.prec() if that is lower.
  void add(const QSeries& s);
  int prec() const { return prec_; }
  QSeries result() const;

 private:
  void extend_down(int e);

  int prec_;
  int lo_;
  std::vector<Coeff> c_;
};

/// Valuation of (x; q^k)_n as a Laurent series (n may be negative); nullopt if
/// the product vanishes identically.
std::optional<int> qpoch_valuation(const QMonomial& x, int k, long n);

}  // namespace qseries
