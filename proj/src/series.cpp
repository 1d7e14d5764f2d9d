#include "qseries/series.hpp"

#include <algorithm>
#include <sstream>

namespace qseries {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ZeroSeries: return "ZeroSeries";
    case ErrorKind::PrecisionExceeded: return "PrecisionExceeded";
    case ErrorKind::DivergentProduct: return "DivergentProduct";
    case ErrorKind::PoleInBottom: return "PoleInBottom";
    case ErrorKind::ValuationStall: return "ValuationStall";
    case ErrorKind::CapExceeded: return "CapExceeded";
    case ErrorKind::SyntaxError: return "SyntaxError";
    case ErrorKind::UnboundSymbol: return "UnboundSymbol";
    case ErrorKind::EvalError: return "EvalError";
    case ErrorKind::NotFinite: return "NotFinite";
    case ErrorKind::UnsatisfiableSignature: return "UnsatisfiableSignature";
  }
  return "Unknown";
}

std::string to_string(const Coeff& c) { return c.get_str(); }

Coeff parse_coeff(const std::string& text) {
  Coeff c;
  if (c.set_str(text, 10) != 0) throw Error(ErrorKind::EvalError, "bad rational literal '" + text + "'");
  c.canonicalize();
  if (sgn(c.get_den()) == 0) throw Error(ErrorKind::ZeroSeries, "zero denominator in '" + text + "'");
  return c;
}

namespace {

int clamp_prec(long p) {
  if (p > kExactPrec) return kExactPrec;
  if (p < -kExactPrec) return -kExactPrec;
  return static_cast<int>(p);
}

bool all_integral(std::span<const Coeff> v) {
  for (const auto& c : v)
    if (mpz_cmp_ui(c.get_den_mpz_t(), 1) != 0) return false;
  return true;
}

}  // namespace

// ---------------------------------------------------------------- QMonomial

bool QMonomial::is_integer() const {
  return is_zero() || (m == 0 && mpz_cmp_ui(c.get_den_mpz_t(), 1) == 0);
}

long QMonomial::as_integer() const {
  if (!is_integer()) throw Error(ErrorKind::EvalError, "expected an integer, got " + to_string());
  if (!c.get_num().fits_slong_p()) throw Error(ErrorKind::EvalError, "integer out of range: " + to_string());
  return c.get_num().get_si();
}

QMonomial QMonomial::operator*(const QMonomial& o) const {
  if (is_zero() || o.is_zero()) return {};
  return {c * o.c, m + o.m};
}

QMonomial QMonomial::operator/(const QMonomial& o) const {
  if (o.is_zero()) throw Error(ErrorKind::ZeroSeries, "division by the zero monomial");
  if (is_zero()) return {};
  return {c / o.c, m - o.m};
}

QMonomial QMonomial::pow(long k) const {
  if (k == 0) return {Coeff(1), 0};
  if (is_zero()) {
    if (k < 0) throw Error(ErrorKind::ZeroSeries, "negative power of the zero monomial");
    return {};
  }
  unsigned long e = static_cast<unsigned long>(k < 0 ? -k : k);
  mpz_class num, den;
  mpz_pow_ui(num.get_mpz_t(), c.get_num_mpz_t(), e);
  mpz_pow_ui(den.get_mpz_t(), c.get_den_mpz_t(), e);
  Coeff r(num, den);
  r.canonicalize();
  if (k < 0) r = 1 / r;
  return {r, static_cast<int>(m * k)};
}

bool QMonomial::operator==(const QMonomial& o) const {
  if (is_zero() || o.is_zero()) return is_zero() == o.is_zero();
  return c == o.c && m == o.m;
}

std::string QMonomial::to_string() const {
  if (is_zero()) return "0";
  std::string s = qseries::to_string(c);
  if (m == 0) return s;
  return s + "*q^" + std::to_string(m);
}

// ---------------------------------------------------------------- QSeries

QSeries QSeries::zero(int prec) { return QSeries(prec + 1, prec, {}); }

QSeries QSeries::one(int prec) { return monomial(QMonomial(Coeff(1), 0), prec); }

QSeries QSeries::monomial(const QMonomial& mono, int prec) {
  if (mono.is_zero() || mono.m > prec) return zero(prec);
  std::vector<Coeff> c(static_cast<std::size_t>(prec - mono.m + 1));
  c[0] = mono.c;
  return QSeries(mono.m, prec, std::move(c));
}

QSeries QSeries::from_coeffs(int val, std::vector<Coeff> coeffs, int prec) {
  if (prec < val) return zero(prec);
  coeffs.resize(static_cast<std::size_t>(prec - val + 1));
  QSeries s(val, prec, std::move(coeffs));
  s.normalize();
  return s;
}

void QSeries::normalize() {
  std::size_t lead = 0;
  while (lead < coeffs_.size() && sgn(coeffs_[lead]) == 0) ++lead;
  if (lead == coeffs_.size()) {
    coeffs_.clear();
    val_ = prec_ + 1;
    return;
  }
  if (lead > 0) {
    coeffs_.erase(coeffs_.begin(), coeffs_.begin() + static_cast<long>(lead));
    val_ += static_cast<int>(lead);
  }
}

Coeff QSeries::coefficient(int e) const {
  if (e > prec_)
    throw Error(ErrorKind::PrecisionExceeded,
                "coefficient of q^" + std::to_string(e) + " requested beyond precision " + std::to_string(prec_));
  if (e < val_) return Coeff(0);
  return coeffs_[static_cast<std::size_t>(e - val_)];
}

QSeries QSeries::truncated(int p) const {
  QSeries r = *this;
  r.truncate_inplace(p);
  return r;
}

void QSeries::truncate_inplace(int p) {
  if (p >= prec_) return;
  prec_ = p;
  if (p < val_) {
    coeffs_.clear();
    val_ = p + 1;
    return;
  }
  coeffs_.resize(static_cast<std::size_t>(p - val_ + 1));
  normalize();
}

QSeries QSeries::shifted(int k) const {
  QSeries r = *this;
  r.shift_inplace(k);
  return r;
}

void QSeries::shift_inplace(int k) {
  val_ = clamp_prec(static_cast<long>(val_) + k);
  prec_ = clamp_prec(static_cast<long>(prec_) + k);
}

QSeries QSeries::scaled(const Coeff& s) const {
  QSeries r = *this;
  r.scale_inplace(s);
  return r;
}

void QSeries::scale_inplace(const Coeff& s) {
  if (sgn(s) == 0) {
    coeffs_.clear();
    val_ = prec_ + 1;
    return;
  }
  for (auto& c : coeffs_) c *= s;
}

bool QSeries::agrees_with(const QSeries& other) const {
  int hi = std::min(prec_, other.prec_);
  int lo = std::min(val_, other.val_);
  for (int e = lo; e <= hi; ++e)
    if (coefficient(e) != other.coefficient(e)) return false;
  return true;
}

void QSeries::mul_binomial(const Coeff& c, int e) {
  if (sgn(c) == 0) return;
  if (e > 0) {
    Coeff t;
    for (std::size_t i = coeffs_.size(); i-- > static_cast<std::size_t>(e);) {
      if (sgn(coeffs_[i - e]) == 0) continue;
      t = c * coeffs_[i - e];
      coeffs_[i] -= t;
    }
  } else if (e == 0) {
    scale_inplace(1 - c);
  } else {
    Coeff inv = 1 / c;
    shift_inplace(e);
    scale_inplace(-c);
    mul_binomial(inv, -e);
  }
}

void QSeries::div_binomial(const Coeff& c, int e) {
  if (sgn(c) == 0) return;
  if (e > 0) {
    Coeff t;
    for (std::size_t i = static_cast<std::size_t>(e); i < coeffs_.size(); ++i) {
      if (sgn(coeffs_[i - e]) == 0) continue;
      t = c * coeffs_[i - e];
      coeffs_[i] += t;
    }
  } else if (e == 0) {
    if (c == 1) throw Error(ErrorKind::ZeroSeries, "division by the vanishing factor (1 - 1)");
    scale_inplace(1 / (1 - c));
  } else {
    Coeff inv = 1 / c;
    shift_inplace(-e);
    scale_inplace(-inv);
    div_binomial(inv, -e);
  }
}

std::string QSeries::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (sgn(coeffs_[i]) == 0) continue;
    if (!first) os << " + ";
    first = false;
    int e = val_ + static_cast<int>(i);
    os << coeffs_[i].get_str();
    if (e != 0) os << "*q^" << e;
  }
  if (!first) os << " + ";
  os << "O(q^" << (static_cast<long>(prec_) + 1) << ")";
  return os.str();
}

QSeries operator+(const QSeries& a, const QSeries& b) {
  int prec = std::min(a.prec_, b.prec_);
  int lo = std::min(a.val_, b.val_);
  if (lo > prec) return QSeries::zero(prec);
  std::vector<Coeff> c(static_cast<std::size_t>(prec - lo + 1));
  for (int e = std::max(a.val_, lo); e <= std::min(prec, a.prec_); ++e)
    c[static_cast<std::size_t>(e - lo)] = a.coeffs_[static_cast<std::size_t>(e - a.val_)];
  for (int e = std::max(b.val_, lo); e <= std::min(prec, b.prec_); ++e)
    c[static_cast<std::size_t>(e - lo)] += b.coeffs_[static_cast<std::size_t>(e - b.val_)];
  QSeries r(lo, prec, std::move(c));
  r.normalize();
  return r;
}

QSeries operator-(const QSeries& a) { return a.scaled(Coeff(-1)); }

QSeries operator-(const QSeries& a, const QSeries& b) { return a + (-b); }

QSeries operator*(const QSeries& a, const QSeries& b) {
  int prec = clamp_prec(std::min(static_cast<long>(a.prec_) + b.val_, static_cast<long>(b.prec_) + a.val_));
  if (a.is_zero() || b.is_zero()) return QSeries::zero(prec);
  int val = a.val_ + b.val_;
  if (prec < val) return QSeries::zero(prec);
  std::size_t n = static_cast<std::size_t>(prec - val + 1);
  std::size_t as = a.coeffs_.size(), bs = b.coeffs_.size();
  std::vector<Coeff> c(n);
  if (all_integral(a.coeffs_) && all_integral(b.coeffs_)) {
    mpz_class acc;
    for (std::size_t k = 0; k < n; ++k) {
      acc = 0;
      std::size_t ilo = k >= bs ? k - bs + 1 : 0;
      std::size_t ihi = std::min(k, as - 1);
      for (std::size_t i = ilo; i <= ihi; ++i)
        mpz_addmul(acc.get_mpz_t(), a.coeffs_[i].get_num_mpz_t(), b.coeffs_[k - i].get_num_mpz_t());
      c[k] = acc;
    }
  } else {
    Coeff t;
    for (std::size_t k = 0; k < n; ++k) {
      std::size_t ilo = k >= bs ? k - bs + 1 : 0;
      std::size_t ihi = std::min(k, as - 1);
      for (std::size_t i = ilo; i <= ihi; ++i) {
        if (sgn(a.coeffs_[i]) == 0 || sgn(b.coeffs_[k - i]) == 0) continue;
        mpq_mul(t.get_mpq_t(), a.coeffs_[i].get_mpq_t(), b.coeffs_[k - i].get_mpq_t());
        c[k] += t;
      }
    }
  }
  QSeries r(val, prec, std::move(c));
  r.normalize();
  return r;
}

QSeries invert(const QSeries& a, int prec) {
  if (a.is_zero())
    throw Error(ErrorKind::ZeroSeries,
                "cannot invert a series with no nonzero coefficient up to q^" + std::to_string(a.prec_));
  int v = a.val_;
  int rprec = clamp_prec(std::min(static_cast<long>(prec), static_cast<long>(a.prec_) - 2L * v));
  if (rprec < -v) return QSeries::zero(rprec);
  std::size_t n = static_cast<std::size_t>(rprec + v + 1);
  std::vector<Coeff> b(n);
  Coeff inv0 = 1 / a.coeffs_[0];
  b[0] = inv0;
  Coeff acc, t;
  for (std::size_t k = 1; k < n; ++k) {
    acc = 0;
    std::size_t ihi = std::min(k, a.coeffs_.size() - 1);
    for (std::size_t i = 1; i <= ihi; ++i) {
      if (sgn(a.coeffs_[i]) == 0 || sgn(b[k - i]) == 0) continue;
      mpq_mul(t.get_mpq_t(), a.coeffs_[i].get_mpq_t(), b[k - i].get_mpq_t());
      acc += t;
    }
    b[k] = -inv0 * acc;
  }
  QSeries r(-v, rprec, std::move(b));
  r.normalize();
  return r;
}

QSeries substitute_power(const QSeries& a, int k) {
  if (k < 1) throw Error(ErrorKind::EvalError, "substitute_power requires k >= 1");
  int prec = clamp_prec(static_cast<long>(a.prec_) * k + (k - 1));
  if (a.is_zero()) return QSeries::zero(prec);
  int val = a.val_ * k;
  std::vector<Coeff> c(static_cast<std::size_t>(prec - val + 1));
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) c[i * static_cast<std::size_t>(k)] = a.coeffs_[i];
  return QSeries(val, prec, std::move(c));
}

QSeries substitute_negate(const QSeries& a) {
  std::vector<Coeff> c(a.coeffs().begin(), a.coeffs().end());
  for (std::size_t i = 0; i < c.size(); ++i) {
    long e = static_cast<long>(a.val()) + static_cast<long>(i);
    if (e % 2 != 0) c[i] = -c[i];
  }
  return QSeries::from_coeffs(a.val(), std::move(c), a.prec());
}

QSeries power(const QSeries& a, unsigned k) {
  if (k == 0) {
    // a^0 == 1 exactly; the window is as wide as a's relative precision allows.
    return QSeries::one(a.is_zero() ? a.prec() : a.prec() - a.val());
  }
  QSeries result = a;
  QSeries base = a;
  bool have = false;
  while (k > 0) {
    if (k & 1u) {
      result = have ? result * base : base;
      have = true;
    }
    k >>= 1u;
    if (k > 0) base = base * base;
  }
  return result;
}

// ---------------------------------------------------------------- BiSeries

BiSeries operator+(const BiSeries& a, const BiSeries& b) {
  std::size_t n = std::max(a.coeffs_.size(), b.coeffs_.size());
  std::vector<QSeries> c;
  c.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    if (k >= a.coeffs_.size()) c.push_back(b.coeffs_[k]);
    else if (k >= b.coeffs_.size()) c.push_back(a.coeffs_[k]);
    else c.push_back(a.coeffs_[k] + b.coeffs_[k]);
  }
  return BiSeries(std::move(c));
}

BiSeries operator-(const BiSeries& a) {
  std::vector<QSeries> c;
  for (const auto& s : a.coeffs_) c.push_back(-s);
  return BiSeries(std::move(c));
}

BiSeries operator*(const BiSeries& a, const BiSeries& b) {
  if (a.coeffs_.empty() || b.coeffs_.empty()) return BiSeries();
  std::size_t n = a.coeffs_.size() + b.coeffs_.size() - 1;
  std::vector<QSeries> c(n, QSeries::zero(kExactPrec));
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] = c[i + j] + a.coeffs_[i] * b.coeffs_[j];
  return BiSeries(std::move(c));
}

BiSeries bi_qderivative(const BiSeries& f) {
  std::vector<QSeries> c;
  const auto& fc = f.coeffs();
  for (std::size_t k = 1; k < fc.size(); ++k) {
    QSeries t = fc[k];
    t.mul_binomial(Coeff(1), static_cast<int>(k));
    c.push_back(std::move(t));
  }
  return BiSeries(std::move(c));
}

QSeries bi_eval(const BiSeries& f, const QMonomial& x0, int prec) {
  QSeries acc = QSeries::zero(prec);
  const auto& fc = f.coeffs();
  for (std::size_t k = 0; k < fc.size(); ++k) {
    QMonomial xk = x0.pow(static_cast<long>(k));
    if (xk.is_zero()) continue;
    QSeries t = fc[k].scaled(xk.c);
    t.shift_inplace(xk.m);
    acc = acc + t;
  }
  return acc;
}

}  // namespace qseries
