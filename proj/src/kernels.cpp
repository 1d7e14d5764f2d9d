#include "qseries/kernels.hpp"

#include <algorithm>
#include <climits>

namespace qseries {

namespace {

int clamp_int(long v) {
  if (v > kExactPrec) return kExactPrec;
  if (v < -kExactPrec) return -kExactPrec;
  return static_cast<int>(v);
}

// q^{x.m + k*j} as a long, for overflow-free comparisons.
long factor_exp(const QMonomial& x, int k, long j) { return static_cast<long>(x.m) + static_cast<long>(k) * j; }

bool is_exact_one(const Coeff& c) { return c == 1; }

}  // namespace

// ---------------------------------------------------------------- SumTracker

SumTracker::SumTracker(const SumGuard& guard) : guard_(guard) {
  if (guard_.stall_window < 1) guard_.stall_window = 1;
  if (guard_.hard_cap < guard_.stall_window) guard_.hard_cap = guard_.stall_window;
}

bool SumTracker::observe(std::optional<int> val) {
  ++terms_;
  long clamped = static_cast<long>(guard_.target_prec) + 1;
  if (val && *val <= guard_.target_prec) clamped = *val;
  bool quiet = clamped > guard_.target_prec;
  quiet_ = quiet ? quiet_ + 1 : 0;
  if (quiet_ >= kQuietRun) return false;
  if (!have_record_ || clamped > record_) {
    record_ = clamped;
    have_record_ = true;
    since_record_ = 0;
  } else if (++since_record_ >= guard_.stall_window) {
    throw Error(ErrorKind::ValuationStall, "term valuations stopped growing after " + std::to_string(terms_) +
                                               " terms (no new record in " +
                                               std::to_string(guard_.stall_window) + " terms)");
  }
  if (terms_ >= guard_.hard_cap)
    throw Error(ErrorKind::CapExceeded, "infinite sum exceeded " + std::to_string(guard_.hard_cap) + " terms");
  return true;
}

// ---------------------------------------------------------------- LaurentAccumulator

void LaurentAccumulator::extend_down(int e) {
  if (e >= lo_) return;
  std::vector<Coeff> n(static_cast<std::size_t>(prec_ - e + 1));
  for (std::size_t i = 0; i < c_.size(); ++i) n[i + static_cast<std::size_t>(lo_ - e)] = std::move(c_[i]);
  c_ = std::move(n);
  lo_ = e;
}

void LaurentAccumulator::add(const Coeff& c, int e) {
  if (e > prec_ || sgn(c) == 0) return;
  extend_down(e);
  c_[static_cast<std::size_t>(e - lo_)] += c;
}

void LaurentAccumulator::add(const QSeries& s) {
  if (s.prec() < prec_) {
    prec_ = s.prec();
    if (prec_ < lo_) {
      c_.clear();
      lo_ = prec_ + 1;
    } else {
      c_.resize(static_cast<std::size_t>(prec_ - lo_ + 1));
    }
  }
  if (s.is_zero() || s.val() > prec_) return;
  extend_down(s.val());
  auto cs = s.coeffs();
  std::size_t off = static_cast<std::size_t>(s.val() - lo_);
  std::size_t n = std::min(cs.size(), static_cast<std::size_t>(prec_ - s.val() + 1));
  for (std::size_t i = 0; i < n; ++i)
    if (sgn(cs[i]) != 0) c_[off + i] += cs[i];
}

QSeries LaurentAccumulator::result() const {
  if (c_.empty()) return QSeries::zero(prec_);
  return QSeries::from_coeffs(lo_, c_, prec_);
}

// ---------------------------------------------------------------- ProductAccumulator

ProductAccumulator::ProductAccumulator(int rel_prec) : rel_(rel_prec), unit_(QSeries::one(std::max(rel_prec, 0))) {
  if (rel_ < 0) {
    zero_ = true;
  }
}

void ProductAccumulator::mul_monomial(const QMonomial& m, bool divide) {
  if (m.is_zero()) {
    if (divide) throw Error(ErrorKind::ZeroSeries, "division by zero");
    zero_ = true;
    rel_ = kExactPrec;
    return;
  }
  if (divide) {
    c_ /= m.c;
    v_ = clamp_int(static_cast<long>(v_) - m.m);
  } else {
    c_ *= m.c;
    v_ = clamp_int(static_cast<long>(v_) + m.m);
  }
}

void ProductAccumulator::mul_binomial(const Coeff& c, int e, bool divide) {
  if (sgn(c) == 0) return;
  if (e == 0) {
    Coeff s = 1 - c;
    if (sgn(s) == 0) {
      if (divide) throw Error(ErrorKind::ZeroSeries, "division by the vanishing factor (1 - 1)");
      zero_ = true;
      rel_ = kExactPrec;
      return;
    }
    if (divide) c_ /= s;
    else c_ *= s;
    return;
  }
  Coeff cc = c;
  int ee = e;
  if (e < 0) {
    mul_monomial(QMonomial(-c, e), divide);
    cc = 1 / c;
    ee = -e;
  }
  if (zero_ || ee > rel_) return;
  if (divide) unit_.div_binomial(cc, ee);
  else unit_.mul_binomial(cc, ee);
}

void ProductAccumulator::mul_qpoch(const QMonomial& x, int k, long n, bool divide) {
  if (x.is_zero() || n == 0) return;
  if (n < 0) {
    QMonomial shifted = x * QMonomial::q_power(clamp_int(static_cast<long>(k) * n));
    mul_qpoch(shifted, k, -n, !divide);
    return;
  }
  for (long j = 0; j < n; ++j) {
    long e = factor_exp(x, k, j);
    // Positive exponents beyond the window only contribute 1.
    if (e > rel_ && e > 0) break;
    mul_binomial(x.c, clamp_int(e), divide);
  }
}

void ProductAccumulator::mul_qpoch_inf(const QMonomial& x, int k, bool divide) {
  if (x.is_zero()) return;
  if (x.m <= 0)
    throw Error(ErrorKind::DivergentProduct,
                "infinite product (" + x.to_string() + "; q^" + std::to_string(k) + ")_inf needs a positive q-exponent");
  for (long j = 0;; ++j) {
    long e = factor_exp(x, k, j);
    if (e > rel_) break;
    mul_binomial(x.c, static_cast<int>(e), divide);
  }
}

void ProductAccumulator::mul_series(const QSeries& s, bool divide) {
  if (s.is_zero()) {
    if (divide)
      throw Error(ErrorKind::ZeroSeries,
                  "division by a series with no nonzero coefficient up to q^" + std::to_string(s.prec()));
    if (zero_ && rel_ == kExactPrec) return;
    // Zero up to s.prec: the product is known to vanish up to v + s.prec.
    zero_ = true;
    v_ = clamp_int(static_cast<long>(v_) + s.prec() + 1);
    rel_ = -1;
    return;
  }
  QSeries u = s.shifted(-s.val());
  if (divide) v_ = clamp_int(static_cast<long>(v_) - s.val());
  else v_ = clamp_int(static_cast<long>(v_) + s.val());
  rel_ = std::min(rel_, u.prec());
  if (zero_) return;
  unit_.truncate_inplace(rel_);
  if (divide) unit_ = unit_ * invert(u, rel_);
  else unit_ = unit_ * u.truncated(rel_);
}

QSeries ProductAccumulator::result() const {
  int prec = clamp_int(static_cast<long>(v_) + rel_);
  if (zero_) return QSeries::zero(prec);
  QSeries r = unit_.truncated(rel_).scaled(c_);
  r.shift_inplace(v_);
  return r;
}

std::optional<int> qpoch_valuation(const QMonomial& x, int k, long n) {
  if (x.is_zero() || n == 0) return 0;
  if (n < 0) {
    QMonomial shifted = x * QMonomial::q_power(clamp_int(static_cast<long>(k) * n));
    auto v = qpoch_valuation(shifted, k, -n);
    if (!v) throw Error(ErrorKind::ZeroSeries, "q-shifted factorial with negative index has a vanishing denominator");
    return -*v;
  }
  long v = 0;
  for (long j = 0; j < n; ++j) {
    long e = factor_exp(x, k, j);
    if (e > 0) break;
    if (e == 0) {
      if (is_exact_one(x.c)) return std::nullopt;
    } else {
      v += e;
    }
  }
  return clamp_int(v);
}

// ---------------------------------------------------------------- q-shifted factorials

QSeries qpoch_finite(const QMonomial& x, int k, long n, int prec) {
  auto v = qpoch_valuation(x, k, n);
  if (!v) return QSeries::zero(prec);
  ProductAccumulator acc(clamp_int(static_cast<long>(prec) - *v));
  acc.mul_qpoch(x, k, n);
  return acc.result().truncated(prec);
}

RatFunc qpoch_finite_exact(const QMonomial& x, int k, long n) {
  RatFunc r = RatFunc::one();
  if (x.is_zero() || n == 0) return r;
  int sign = 1;
  QMonomial base = x;
  if (n < 0) {
    base = x * QMonomial::q_power(clamp_int(static_cast<long>(k) * n));
    n = -n;
    sign = -1;
  }
  for (long j = 0; j < n; ++j) {
    long e = factor_exp(base, k, j);
    if (e == 0 && is_exact_one(base.c)) {
      if (sign < 0) throw Error(ErrorKind::ZeroSeries, "q-shifted factorial with negative index has a vanishing denominator");
      return RatFunc::zero();
    }
    r.mul_binomial(base.c, clamp_int(e), sign);
  }
  return r;
}

QSeries qpoch_inf(const QMonomial& x, int k, int prec) {
  if (x.is_zero()) return QSeries::one(prec);
  if (x.m <= 0)
    throw Error(ErrorKind::DivergentProduct,
                "infinite product (" + x.to_string() + "; q^" + std::to_string(k) + ")_inf needs a positive q-exponent");
  ProductAccumulator acc(prec);
  acc.mul_qpoch_inf(x, k);
  return acc.result().truncated(prec);
}

// ---------------------------------------------------------------- basic hypergeometric series

namespace {

struct PhiPlan {
  long count = 0;            // number of terms to sum (indices 0..count-1)
  bool terminating = false;  // every later term vanishes exactly
  std::vector<long> vals;    // valuation of each summed term
};

// Valuation bookkeeping for the ratio t_{n+1}/t_n. Returns std::nullopt when a
// numerator factor vanishes (the series terminates).
std::optional<long> ratio_valuation(const PhiSpec& spec, long n) {
  long v = 0;
  for (const auto& a : spec.tops) {
    if (a.is_zero()) continue;
    long e = factor_exp(a, spec.base, n);
    if (e == 0 && is_exact_one(a.c)) return std::nullopt;
    if (e < 0) v += e;
  }
  for (const auto& b : spec.bottoms) {
    if (b.is_zero()) continue;
    long e = factor_exp(b, spec.base, n);
    if (e == 0 && is_exact_one(b.c))
      throw Error(ErrorKind::PoleInBottom, "bottom parameter " + b.to_string() + " makes factor " +
                                               std::to_string(n) + " of the denominator vanish");
    if (e < 0) v -= e;
  }
  v += spec.arg.m;
  v += static_cast<long>(spec.compensating_exponent()) * spec.base * n;
  return v;
}

PhiPlan plan_phi(const PhiSpec& spec, const SumGuard& guard) {
  PhiPlan plan;
  if (spec.arg.is_zero()) {
    plan.count = 1;
    plan.terminating = true;
    plan.vals.push_back(0);
    return plan;
  }
  // Past n0 every parameter factor has a positive exponent and the increments
  // are affine in n.
  long n0 = 0;
  auto past = [&](const QMonomial& p) {
    if (p.is_zero()) return;
    long need = 1 - p.m;
    if (need > 0) n0 = std::max(n0, (need + spec.base - 1) / spec.base);
  };
  for (const auto& a : spec.tops) past(a);
  for (const auto& b : spec.bottoms) past(b);
  long slope = static_cast<long>(spec.compensating_exponent()) * spec.base;

  long v = 0;
  for (long n = 0;; ++n) {
    if (n >= guard.hard_cap)
      throw Error(ErrorKind::CapExceeded, "basic hypergeometric series exceeded " + std::to_string(guard.hard_cap) + " terms");
    auto dv = ratio_valuation(spec, n);
    if (!dv) {
      plan.vals.push_back(v);
      plan.count = n + 1;
      plan.terminating = true;
      return plan;
    }
    if (n >= n0) {
      if (slope < 0 || (slope == 0 && spec.arg.m <= 0))
        throw Error(ErrorKind::ValuationStall,
                    "term valuations of the basic hypergeometric series do not grow under this substitution");
      if (*dv > 0 && v > guard.target_prec) {
        plan.count = n;
        return plan;
      }
    }
    plan.vals.push_back(v);
    v += *dv;
  }
}

// Multiply acc by t_{n+1}/t_n.
void apply_ratio(const PhiSpec& spec, long n, ProductAccumulator& acc) {
  const int k = spec.base;
  for (const auto& a : spec.tops) acc.mul_binomial(a.c, clamp_int(factor_exp(a, k, n)));
  for (const auto& b : spec.bottoms) acc.mul_binomial(b.c, clamp_int(factor_exp(b, k, n)), true);
  acc.mul_binomial(Coeff(1), clamp_int(static_cast<long>(k) * (n + 1)), true);
  acc.mul_monomial(spec.arg);
  int ce = spec.compensating_exponent();
  QMonomial comp(Coeff(1), 0);
  if (ce != 0) comp = QMonomial(Coeff(-1), clamp_int(static_cast<long>(k) * n)).pow(ce);
  acc.mul_monomial(comp);
}

}  // namespace

QSeries rphi(const PhiSpec& spec, const SumGuard& guard) {
  const int prec = guard.target_prec;
  PhiPlan plan = plan_phi(spec, guard);
  long minv = *std::min_element(plan.vals.begin(), plan.vals.end());
  LaurentAccumulator sum(prec);
  if (minv > prec) return QSeries::zero(prec);
  ProductAccumulator term(clamp_int(static_cast<long>(prec) - minv));
  for (long n = 0; n < plan.count; ++n) {
    if (plan.vals[static_cast<std::size_t>(n)] <= prec) sum.add(term.result());
    if (n + 1 < plan.count) apply_ratio(spec, n, term);
  }
  return sum.result();
}

RatFunc rphi_exact(const PhiSpec& spec) {
  SumGuard guard;
  if (spec.arg.is_zero()) return RatFunc::one();
  long n = 0;
  for (;; ++n) {
    if (n >= guard.hard_cap)
      throw Error(ErrorKind::NotFinite, "basic hypergeometric series does not terminate");
    if (!ratio_valuation(spec, n)) break;
  }
  const long count = n + 1;
  const int k = spec.base;
  // Horner from the innermost term: X_n = 1 + (t_{n+1}/t_n) X_{n+1}.
  RatFunc x = RatFunc::one();
  for (long i = count - 2; i >= 0; --i) {
    RatFunc r = RatFunc::one();
    for (const auto& a : spec.tops)
      if (!a.is_zero()) r.mul_binomial(a.c, clamp_int(factor_exp(a, k, i)));
    for (const auto& b : spec.bottoms)
      if (!b.is_zero()) r.mul_binomial(b.c, clamp_int(factor_exp(b, k, i)), -1);
    r.mul_binomial(Coeff(1), clamp_int(static_cast<long>(k) * (i + 1)), -1);
    r = r * RatFunc::monomial(spec.arg);
    int ce = spec.compensating_exponent();
    if (ce != 0) r = r * RatFunc::monomial(QMonomial(Coeff(-1), clamp_int(static_cast<long>(k) * i)).pow(ce));
    x = RatFunc::one() + r * x;
  }
  return x;
}

// ---------------------------------------------------------------- theta functions

QSeries theta_phi(int prec) {
  LaurentAccumulator acc(prec);
  for (long n = 0; n * n <= prec; ++n) acc.add(Coeff(n == 0 ? 1 : 2), static_cast<int>(n * n));
  return acc.result();
}

QSeries theta_psi(int prec) {
  LaurentAccumulator acc(prec);
  for (long n = 0; n * (n + 1) / 2 <= prec; ++n) acc.add(Coeff(1), static_cast<int>(n * (n + 1) / 2));
  return acc.result();
}

RatFunc finite_theta_S(long n) {
  if (n < 0) return RatFunc::zero();
  std::vector<Coeff> c(static_cast<std::size_t>(n * n + 1));
  for (long j = -n; j <= n; ++j) c[static_cast<std::size_t>(n * n - j * j)] += (j % 2 == 0) ? 1 : -1;
  return RatFunc::laurent(clamp_int(-n * n), c);
}

RatFunc finite_theta_T(long n) {
  if (n < 0) return RatFunc::zero();
  long top = n * (n + 1) / 2;
  std::vector<Coeff> c(static_cast<std::size_t>(top + 1));
  for (long j = 0; j <= n; ++j) c[static_cast<std::size_t>(top - j * (j + 1) / 2)] += 1;
  return RatFunc::laurent(clamp_int(-top), c);
}

// ---------------------------------------------------------------- Hecke-type double sums

std::pair<long, long> inner_range(RangeKind kind, long n) {
  switch (kind) {
    case RangeKind::Symmetric:
      return {-n, n};
    case RangeKind::Half:
      return {0, n};
    case RangeKind::Double:
      return {0, 2 * n};
  }
  return {0, -1};
}

QSeries hecke_double_sum(const HeckeTerm& term, RangeKind kind, const SumGuard& guard,
                         const HeckeRowFactor& row_factor) {
  const int prec = guard.target_prec;
  LaurentAccumulator sum(prec);
  SumTracker tracker(guard);
  std::vector<QMonomial> row;
  for (long n = 0;; ++n) {
    auto [lo, hi] = inner_range(kind, n);
    row.clear();
    long rowmin = LONG_MAX;
    for (long j = lo; j <= hi; ++j) {
      QMonomial t = term(n, j);
      if (t.is_zero()) continue;
      rowmin = std::min<long>(rowmin, t.m);
      row.push_back(t);
    }
    std::optional<int> rowval;
    if (rowmin != LONG_MAX) {
      if (!row_factor) {
        rowval = clamp_int(rowmin);
        for (const auto& t : row) sum.add(t.c, t.m);
      } else {
        long need = std::max(static_cast<long>(prec) - rowmin, 0L);
        QSeries f = row_factor(n, clamp_int(need));
        if (!f.is_zero()) {
          rowval = clamp_int(rowmin + f.val());
          LaurentAccumulator inner(clamp_int(static_cast<long>(prec) - f.val()));
          for (const auto& t : row) inner.add(t.c, t.m);
          sum.add(inner.result() * f);
        }
      }
    }
    if (!tracker.observe(rowval)) break;
  }
  return sum.result();
}

}  // namespace qseries
