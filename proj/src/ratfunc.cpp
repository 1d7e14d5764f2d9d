#include "qseries/ratfunc.hpp"

#include <algorithm>
#include <sstream>

namespace qseries {

namespace {

using Poly = std::vector<Coeff>;

// Dense product that iterates over the sparser operand.
Poly poly_mul(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  const Poly& sparse = a.size() <= b.size() ? a : b;
  const Poly& dense = a.size() <= b.size() ? b : a;
  Poly r(a.size() + b.size() - 1);
  Coeff t;
  for (std::size_t i = 0; i < sparse.size(); ++i) {
    if (sgn(sparse[i]) == 0) continue;
    for (std::size_t j = 0; j < dense.size(); ++j) {
      if (sgn(dense[j]) == 0) continue;
      mpq_mul(t.get_mpq_t(), sparse[i].get_mpq_t(), dense[j].get_mpq_t());
      r[i + j] += t;
    }
  }
  return r;
}

Poly poly_pow(const Poly& f, int e) {
  Poly r{Coeff(1)};
  for (int i = 0; i < e; ++i) r = poly_mul(r, f);
  return r;
}

// Expand c * prod f^{e_f} over the given exponent map (all exponents >= 0).
Poly expand(const Coeff& c, const RatFunc::FactorMap& m) {
  Poly r{c};
  for (const auto& [f, e] : m)
    if (e > 0) r = poly_mul(r, poly_pow(f, e));
  return r;
}

}  // namespace

bool PolyLess::operator()(const std::vector<Coeff>& a, const std::vector<Coeff>& b) const {
  if (a.size() != b.size()) return a.size() < b.size();
  for (std::size_t i = 0; i < a.size(); ++i) {
    int c = cmp(a[i], b[i]);
    if (c != 0) return c < 0;
  }
  return false;
}

RatFunc RatFunc::monomial(const QMonomial& m) {
  RatFunc r;
  if (m.is_zero()) return r;
  r.c_ = m.c;
  r.v_ = m.m;
  return r;
}

RatFunc RatFunc::binomial(const Coeff& c, int e) {
  RatFunc r = one();
  r.mul_binomial(c, e);
  return r;
}

RatFunc RatFunc::laurent(int val, const std::vector<Coeff>& coeffs) {
  std::size_t lo = 0;
  while (lo < coeffs.size() && sgn(coeffs[lo]) == 0) ++lo;
  if (lo == coeffs.size()) return {};
  std::size_t hi = coeffs.size() - 1;
  while (sgn(coeffs[hi]) == 0) --hi;
  RatFunc r;
  r.c_ = coeffs[lo];
  r.v_ = val + static_cast<int>(lo);
  if (hi > lo) {
    Poly f(coeffs.begin() + static_cast<long>(lo), coeffs.begin() + static_cast<long>(hi) + 1);
    Coeff inv = 1 / r.c_;
    for (auto& x : f) x *= inv;
    r.add_factor(f, 1);
  }
  return r;
}

void RatFunc::add_factor(const std::vector<Coeff>& f, int e) {
  if (e == 0) return;
  auto [it, inserted] = factors_.emplace(f, e);
  if (!inserted) {
    it->second += e;
    if (it->second == 0) factors_.erase(it);
  }
}

void RatFunc::mul_binomial(const Coeff& c, int e, int mult) {
  if (is_zero() || sgn(c) == 0 || mult == 0) return;
  if (e == 0) {
    Coeff s = 1 - c;
    if (sgn(s) == 0) {
      if (mult < 0) throw Error(ErrorKind::ZeroSeries, "division by the vanishing factor (1 - 1)");
      *this = RatFunc();
      return;
    }
    RatFunc p = monomial(QMonomial(s, 0)).pow(mult);
    c_ *= p.c_;
    return;
  }
  Coeff cc = c;
  int ee = e;
  if (e < 0) {
    // 1 - c q^e = -c q^e (1 - c^{-1} q^{-e})
    QMonomial lead = QMonomial(-c, e).pow(mult);
    c_ *= lead.c;
    v_ += lead.m;
    cc = 1 / c;
    ee = -e;
  }
  Poly f(static_cast<std::size_t>(ee) + 1);
  f[0] = 1;
  f[static_cast<std::size_t>(ee)] = -cc;
  add_factor(f, mult);
}

bool RatFunc::is_laurent_polynomial() const {
  return std::all_of(factors_.begin(), factors_.end(), [](const auto& kv) { return kv.second > 0; });
}

bool RatFunc::as_monomial(QMonomial& out) const {
  if (!factors_.empty()) return false;
  out = is_zero() ? QMonomial() : QMonomial(c_, v_);
  return true;
}

RatFunc RatFunc::inverse() const {
  if (is_zero()) throw Error(ErrorKind::ZeroSeries, "inverse of the zero rational function");
  RatFunc r;
  r.c_ = 1 / c_;
  r.v_ = -v_;
  for (const auto& [f, e] : factors_) r.factors_.emplace(f, -e);
  return r;
}

RatFunc RatFunc::pow(long k) const {
  if (k == 0) return one();
  if (is_zero()) {
    if (k < 0) throw Error(ErrorKind::ZeroSeries, "negative power of zero");
    return {};
  }
  QMonomial lead = QMonomial(c_, v_).pow(k);
  RatFunc r;
  r.c_ = lead.c;
  r.v_ = lead.m;
  for (const auto& [f, e] : factors_) r.factors_.emplace(f, static_cast<int>(e * k));
  return r;
}

RatFunc operator*(const RatFunc& a, const RatFunc& b) {
  if (a.is_zero() || b.is_zero()) return {};
  RatFunc r = a;
  r.c_ *= b.c_;
  r.v_ += b.v_;
  for (const auto& [f, e] : b.factors_) r.add_factor(f, e);
  return r;
}

RatFunc operator/(const RatFunc& a, const RatFunc& b) { return a * b.inverse(); }

RatFunc operator-(const RatFunc& a) {
  RatFunc r = a;
  r.c_ = -r.c_;
  return r;
}

RatFunc operator-(const RatFunc& a, const RatFunc& b) { return a + (-b); }

RatFunc operator+(const RatFunc& a, const RatFunc& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  // Common part: exponent min(e_a, e_b) per factor, missing factors count as 0.
  RatFunc::FactorMap common, ra, rb;
  auto exponent_in = [](const RatFunc::FactorMap& m, const std::vector<Coeff>& f) {
    auto it = m.find(f);
    return it == m.end() ? 0 : it->second;
  };
  auto visit = [&](const std::vector<Coeff>& f) {
    int ea = exponent_in(a.factors_, f), eb = exponent_in(b.factors_, f);
    int g = std::min(ea, eb);
    if (g != 0) common.emplace(f, g);
    if (ea != g) ra.emplace(f, ea - g);
    if (eb != g) rb.emplace(f, eb - g);
  };
  for (const auto& kv : a.factors_) visit(kv.first);
  for (const auto& kv : b.factors_)
    if (!a.factors_.count(kv.first)) visit(kv.first);

  int vmin = std::min(a.v_, b.v_);
  Poly pa = expand(a.c_, ra);
  Poly pb = expand(b.c_, rb);
  std::size_t oa = static_cast<std::size_t>(a.v_ - vmin), ob = static_cast<std::size_t>(b.v_ - vmin);
  Poly s(std::max(pa.size() + oa, pb.size() + ob));
  for (std::size_t i = 0; i < pa.size(); ++i) s[i + oa] += pa[i];
  for (std::size_t i = 0; i < pb.size(); ++i) s[i + ob] += pb[i];
  RatFunc r = RatFunc::laurent(vmin, s);
  if (r.is_zero()) return r;
  for (const auto& [f, e] : common) r.add_factor(f, e);
  return r;
}

std::vector<Coeff> RatFunc::expanded_numerator() const {
  if (is_zero()) return {};
  return expand(c_, factors_);
}

QSeries RatFunc::to_series(int prec) const {
  if (is_zero()) return QSeries::zero(prec);
  QSeries s = QSeries::from_coeffs(v_, expanded_numerator(), prec);
  for (const auto& [f, e] : factors_) {
    if (e > 0) continue;
    std::size_t nz = 0, last = 0;
    for (std::size_t i = 1; i < f.size(); ++i)
      if (sgn(f[i]) != 0) ++nz, last = i;
    for (int k = 0; k < -e; ++k) {
      if (nz == 1) {
        s.div_binomial(-f[last], static_cast<int>(last));
      } else {
        QSeries fs = QSeries::from_coeffs(0, f, std::max(prec - s.val(), 0));
        s = s * invert(fs, std::max(prec - s.val(), 0));
      }
    }
  }
  return s.truncated(prec);
}

std::string RatFunc::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  os << c_.get_str();
  if (v_ != 0) os << "*q^" << v_;
  for (const auto& [f, e] : factors_) {
    os << "*(";
    bool first = true;
    for (std::size_t i = 0; i < f.size(); ++i) {
      if (sgn(f[i]) == 0) continue;
      if (!first) os << " + ";
      first = false;
      os << f[i].get_str();
      if (i > 0) os << "*q^" << i;
    }
    os << ")^" << e;
  }
  return os.str();
}

}  // namespace qseries
