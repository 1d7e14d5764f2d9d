#include <algorithm>
#include <climits>
#include <optional>

#include "qseries/dsl.hpp"

namespace qseries::dsl {

namespace {

int clamp_int(long v) {
  if (v > kExactPrec) return kExactPrec;
  if (v < -kExactPrec) return -kExactPrec;
  return static_cast<int>(v);
}

long floor_div(long a, long b) {
  long q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

bool is_call(const Expr& e, std::string_view name) { return e.kind == NodeKind::Call && e.name == name; }

bool mentions_x(const Expr& e) {
  if (e.kind == NodeKind::Symbol) return e.name == "x";
  if (is_call(e, "dqx")) return mentions_x(*e.args[0]) || mentions_x(*e.args[2]);
  if (is_call(e, "sum") && e.args[0]->kind == NodeKind::Symbol && e.args[0]->name == "x")
    return mentions_x(*e.args[1]) || mentions_x(*e.args[2]);
  return std::any_of(e.args.begin(), e.args.end(), [](const ExprPtr& a) { return mentions_x(*a); });
}

// One multiplicative factor of a flattened product chain.
struct Factor {
  enum class Kind { Binomial, QPoch, QPochInf, General };
  explicit Factor(Kind kd) : kind(kd) {}
  Kind kind;
  long power = 1;
  // Binomial: (1 - c q^e), e > 0.
  Coeff c;
  int e = 0;
  // QPoch / QPochInf.
  QMonomial x;
  int k = 1;
  long n = 0;
  // General.
  const Expr* node = nullptr;
  std::optional<QSeries> value;
  int exact_val = 0;  // valuation of one copy, for the exact kinds
};

class Evaluator {
 public:
  Evaluator(const Environment& env, const EvalOptions& opts) : env_(env), opts_(opts) {}

  // ------------------------------------------------------------ scalar paths

  std::optional<QMonomial> monomial(const Expr& e) {
    switch (e.kind) {
      case NodeKind::Number:
        return QMonomial(Coeff(e.number), 0);
      case NodeKind::Q:
        return QMonomial::q_power(1);
      case NodeKind::Symbol:
        return lookup(e);
      case NodeKind::Neg: {
        auto m = monomial(*e.args[0]);
        if (!m) return std::nullopt;
        return -*m;
      }
      case NodeKind::Mul:
      case NodeKind::Div: {
        auto a = monomial(*e.args[0]);
        if (!a) return std::nullopt;
        auto b = monomial(*e.args[1]);
        if (!b) return std::nullopt;
        if (e.kind == NodeKind::Mul) return *a * *b;
        if (b->is_zero()) throw Error(ErrorKind::ZeroSeries, "division by zero" + where(), e.span);
        return *a / *b;
      }
      case NodeKind::Pow: {
        auto b = monomial(*e.args[0]);
        if (!b) return std::nullopt;
        long k = integer(*e.args[1], "exponent");
        if (b->is_zero() && k < 0) throw Error(ErrorKind::ZeroSeries, "negative power of zero" + where(), e.span);
        return b->pow(k);
      }
      case NodeKind::Add:
      case NodeKind::Sub: {
        auto a = monomial(*e.args[0]);
        if (!a) return std::nullopt;
        auto b = monomial(*e.args[1]);
        if (!b) return std::nullopt;
        if (e.kind == NodeKind::Sub) b = -*b;
        if (a->is_zero()) return b;
        if (b->is_zero()) return a;
        if (a->m != b->m) return std::nullopt;
        return QMonomial(a->c + b->c, a->m);
      }
      default:
        return std::nullopt;
    }
  }

  long integer(const Expr& e, const char* what) {
    auto m = monomial(e);
    if (!m || !m->is_integer())
      throw Error(ErrorKind::EvalError,
                  std::string(what) + " '" + print(e) + "' is not an integer" + where(), e.span);
    return m->as_integer();
  }

  QMonomial require_monomial(const Expr& e, const char* what) {
    auto m = monomial(e);
    if (!m)
      throw Error(ErrorKind::EvalError, std::string(what) + " '" + print(e) + "' must be a monomial c*q^m" + where(),
                  e.span);
    return *m;
  }

  int base_of(const Expr& e) {
    long k = integer(e, "base");
    if (k < 1) throw Error(ErrorKind::EvalError, "base exponent must be at least 1" + where(), e.span);
    return clamp_int(k);
  }

  // ------------------------------------------------------------ series mode

  QSeries series(const Expr& e, int prec) {
    switch (e.kind) {
      case NodeKind::Number:
      case NodeKind::Q:
      case NodeKind::Symbol:
      case NodeKind::Neg:
      case NodeKind::Mul:
      case NodeKind::Div:
      case NodeKind::Pow:
        return chain(e, prec);
      case NodeKind::Add:
      case NodeKind::Sub: {
        if (auto m = monomial(e)) return QSeries::monomial(*m, prec);
        if (binomial(e)) return chain(e, prec);
        QSeries a = series(*e.args[0], prec);
        QSeries b = series(*e.args[1], prec);
        return e.kind == NodeKind::Add ? a + b : a - b;
      }
      case NodeKind::Call:
        return call(e, prec);
      case NodeKind::Inf:
        throw Error(ErrorKind::EvalError, "'inf' is only allowed as the upper bound of a sum", e.span);
      case NodeKind::List:
        throw Error(ErrorKind::EvalError, "a list is only allowed as a phi parameter list", e.span);
    }
    return QSeries::zero(prec);
  }

  // (a + b) with monomials a, b of different exponents: lead * (1 - c q^e).
  std::optional<std::pair<QMonomial, std::pair<Coeff, int>>> binomial(const Expr& e) {
    if (e.kind != NodeKind::Add && e.kind != NodeKind::Sub) return std::nullopt;
    auto a = monomial(*e.args[0]);
    if (!a) return std::nullopt;
    auto b = monomial(*e.args[1]);
    if (!b) return std::nullopt;
    if (e.kind == NodeKind::Sub) b = -*b;
    if (a->is_zero() || b->is_zero() || a->m == b->m) return std::nullopt;
    QMonomial lo = *a, hi = *b;
    if (lo.m > hi.m) std::swap(lo, hi);
    return std::make_pair(lo, std::make_pair(Coeff(-hi.c / lo.c), hi.m - lo.m));
  }

  void flatten(const Expr& e, long power, std::vector<Factor>& out, QMonomial& scalar, bool& zero) {
    switch (e.kind) {
      case NodeKind::Mul:
        flatten(*e.args[0], power, out, scalar, zero);
        flatten(*e.args[1], power, out, scalar, zero);
        return;
      case NodeKind::Div:
        flatten(*e.args[0], power, out, scalar, zero);
        flatten(*e.args[1], -power, out, scalar, zero);
        return;
      case NodeKind::Neg:
        if (power % 2 != 0) scalar = -scalar;
        flatten(*e.args[0], power, out, scalar, zero);
        return;
      case NodeKind::Pow: {
        long k = integer(*e.args[1], "exponent");
        if (k == 0) return;
        flatten(*e.args[0], power * k, out, scalar, zero);
        return;
      }
      default:
        break;
    }
    if (auto m = monomial(e)) {
      if (m->is_zero()) {
        if (power < 0) throw Error(ErrorKind::ZeroSeries, "division by zero" + where(), e.span);
        zero = true;
        return;
      }
      scalar = scalar * m->pow(power);
      return;
    }
    if (auto b = binomial(e)) {
      scalar = scalar * b->first.pow(power);
      Factor f(Factor::Kind::Binomial);
      f.power = power;
      f.c = b->second.first;
      f.e = b->second.second;
      out.push_back(std::move(f));
      return;
    }
    if (is_call(e, "qpoch")) {
      auto x = monomial(*e.args[0]);
      if (x) {
        Factor f(Factor::Kind::QPoch);
        f.power = power;
        f.x = *x;
        f.k = base_of(*e.args[1]);
        f.n = integer(*e.args[2], "qpoch length");
        std::optional<int> v;
        try {
          v = qpoch_valuation(f.x, f.k, f.n);
        } catch (const Error& err) {
          throw Error(err.kind(), err.what() + where(), e.span);
        }
        if (!v) {
          if (power < 0) throw Error(ErrorKind::ZeroSeries, "division by a vanishing q-shifted factorial" + where(), e.span);
          zero = true;
          return;
        }
        f.exact_val = *v;
        out.push_back(std::move(f));
        return;
      }
    }
    if (is_call(e, "qpochinf")) {
      QMonomial x = require_monomial(*e.args[0], "qpochinf argument");
      int k = base_of(*e.args[1]);
      if (x.is_zero()) return;
      if (x.m <= 0)
        throw Error(ErrorKind::DivergentProduct,
                    "infinite product (" + x.to_string() + "; q^" + std::to_string(k) + ")_inf needs a positive q-exponent" + where(),
                    e.span);
      Factor f(Factor::Kind::QPochInf);
      f.power = power;
      f.x = x;
      f.k = k;
      out.push_back(std::move(f));
      return;
    }
    Factor f(Factor::Kind::General);
    f.power = power;
    f.node = &e;
    out.push_back(std::move(f));
  }

  QSeries chain(const Expr& e, int prec) {
    std::vector<Factor> fs;
    QMonomial scalar(Coeff(1), 0);
    bool zero = false;
    flatten(e, 1, fs, scalar, zero);
    if (zero) return QSeries::zero(prec);

    long vexact = scalar.m;
    for (const auto& f : fs)
      if (f.kind == Factor::Kind::QPoch) vexact += f.power * f.exact_val;

    // Provisional evaluation of general factors to learn their valuations.
    long vgen = 0;
    bool unknown_zero = false;
    for (auto& f : fs) {
      if (f.kind != Factor::Kind::General) continue;
      int p0 = clamp_int(std::max(static_cast<long>(prec) - vexact, 0L));
      f.value = series(*f.node, p0);
      if (f.value->is_zero()) {
        if (f.power < 0) f.value = nonzero_for_division(*f.node, p0);
        else unknown_zero = true;
      }
      if (!f.value->is_zero()) vgen += f.power * f.value->val();
      else vgen += f.power * (static_cast<long>(f.value->prec()) + 1);
    }
    long v = vexact + vgen;
    long rel = static_cast<long>(prec) - v;
    if (rel < 0) return QSeries::zero(prec);
    if (unknown_zero) {
      // Some factor vanishes on its window; recompute it far enough to decide.
      for (auto& f : fs) {
        if (f.kind != Factor::Kind::General || !f.value->is_zero()) continue;
        long others = v - f.power * (static_cast<long>(f.value->prec()) + 1);
        long need = floor_div(static_cast<long>(prec) - others, f.power);
        if (need <= f.value->prec()) continue;
        f.value = series(*f.node, clamp_int(need));
        v = others + (f.value->is_zero() ? f.power * (static_cast<long>(f.value->prec()) + 1)
                                         : f.power * f.value->val());
      }
      rel = static_cast<long>(prec) - v;
      if (rel < 0) return QSeries::zero(prec);
      for (const auto& f : fs)
        if (f.kind == Factor::Kind::General && f.value->is_zero()) return QSeries::zero(prec);
    }

    ProductAccumulator acc(clamp_int(rel));
    acc.mul_monomial(scalar);
    for (auto& f : fs) {
      long reps = f.power < 0 ? -f.power : f.power;
      bool divide = f.power < 0;
      switch (f.kind) {
        case Factor::Kind::Binomial:
          for (long i = 0; i < reps; ++i) acc.mul_binomial(f.c, f.e, divide);
          break;
        case Factor::Kind::QPoch:
          for (long i = 0; i < reps; ++i) acc.mul_qpoch(f.x, f.k, f.n, divide);
          break;
        case Factor::Kind::QPochInf:
          for (long i = 0; i < reps; ++i) acc.mul_qpoch_inf(f.x, f.k, divide);
          break;
        case Factor::Kind::General: {
          long need = static_cast<long>(f.value->val()) + rel;
          if (f.value->prec() < need) f.value = series(*f.node, clamp_int(need));
          if (reps > 1 && !divide) {
            acc.mul_series(power(*f.value, static_cast<unsigned>(reps)));
          } else {
            for (long i = 0; i < reps; ++i) acc.mul_series(*f.value, divide);
          }
          break;
        }
      }
    }
    return acc.result();
  }

  QSeries nonzero_for_division(const Expr& e, int prec) {
    long p = prec;
    for (int attempt = 0; attempt < 4; ++attempt) {
      p = p * 2 + 16;
      QSeries s = series(e, clamp_int(p));
      if (!s.is_zero()) return s;
    }
    throw Error(ErrorKind::ZeroSeries, "denominator '" + print(e) + "' vanishes to every tried precision" + where(), e.span);
  }

  QSeries call(const Expr& e, int prec) {
    const std::string& name = e.name;
    if (name == "qpoch" || name == "qpochinf") {
      if (monomial(*e.args[0]) || name == "qpochinf") return chain(e, prec);
      // General argument: multiply out (1 - x q^{kj}) as series.
      int k = base_of(*e.args[1]);
      long n = integer(*e.args[2], "qpoch length");
      if (n < 0)
        throw Error(ErrorKind::EvalError, "qpoch with a series argument needs a nonnegative length" + where(), e.span);
      QSeries x = series(*e.args[0], prec);
      QSeries r = QSeries::one(prec);
      for (long j = 0; j < n; ++j) r = r * (QSeries::one(prec) - x.shifted(clamp_int(static_cast<long>(k) * j)));
      return r;
    }
    if (name == "phi") return phi(e, prec);
    if (name == "thetaphi") return theta_phi(prec);
    if (name == "thetapsi") return theta_psi(prec);
    if (name == "S" || name == "T") {
      long n = integer(*e.args[0], "index");
      RatFunc r = name == "S" ? finite_theta_S(n) : finite_theta_T(n);
      return r.to_series(prec);
    }
    if (name == "sum") return sum(e, prec);
    if (name == "subsq") {
      long k = integer(*e.args[1], "substitution power");
      if (k < 1) throw Error(ErrorKind::EvalError, "subsq needs k >= 1" + where(), e.span);
      QSeries inner = series(*e.args[0], clamp_int(floor_div(prec, k)));
      return substitute_power(inner, clamp_int(k));
    }
    if (name == "subsnegq") return substitute_negate(series(*e.args[0], prec));
    if (name == "polyF") {
      if (auto m = monomial(*e.args[0])) {
        LaurentAccumulator acc(prec);
        for (std::size_t i = 0; i < env_.poly_f.size(); ++i) {
          QMonomial t = m->pow(static_cast<long>(i));
          acc.add(env_.poly_f[i] * t.c, t.m);
        }
        return acc.result();
      }
      QSeries x = series(*e.args[0], prec);
      QSeries r = QSeries::zero(prec);
      for (std::size_t i = env_.poly_f.size(); i-- > 0;)
        r = r * x + QSeries::monomial(QMonomial(env_.poly_f[i], 0), prec);
      return r;
    }
    if (name == "dqx") return dqx(e, prec);
    throw Error(ErrorKind::EvalError, "unknown function '" + name + "'", e.span);
  }

  PhiSpec phi_spec(const Expr& e) {
    if (e.args[0]->kind != NodeKind::List || e.args[1]->kind != NodeKind::List)
      throw Error(ErrorKind::EvalError, "phi expects parameter lists [..] as its first two arguments", e.span);
    PhiSpec spec;
    for (const auto& a : e.args[0]->args) spec.tops.push_back(require_monomial(*a, "phi parameter"));
    for (const auto& b : e.args[1]->args) spec.bottoms.push_back(require_monomial(*b, "phi parameter"));
    spec.base = base_of(*e.args[2]);
    spec.arg = require_monomial(*e.args[3], "phi argument");
    return spec;
  }

  QSeries phi(const Expr& e, int prec) {
    PhiSpec spec = phi_spec(e);
    SumGuard g{prec, opts_.stall_window, opts_.hard_cap};
    try {
      return rphi(spec, g);
    } catch (const Error& err) {
      if (err.has_span()) throw;
      throw Error(err.kind(), err.what() + where(), e.span);
    }
  }

  const std::string& sum_var(const Expr& e) {
    if (e.args[0]->kind != NodeKind::Symbol)
      throw Error(ErrorKind::EvalError, "sum variable must be a plain symbol", e.args[0]->span);
    return e.args[0]->name;
  }

  QSeries sum(const Expr& e, int prec) {
    const std::string& var = sum_var(e);
    long lo = integer(*e.args[1], "sum bound");
    bool infinite = e.args[2]->kind == NodeKind::Inf;
    long hi = infinite ? LONG_MAX : integer(*e.args[2], "sum bound");
    const Expr& body = *e.args[3];
    LaurentAccumulator acc(prec);
    SumTracker tracker(SumGuard{prec, opts_.stall_window, opts_.hard_cap});
    for (long i = lo; i <= hi; ++i) {
      locals_.emplace_back(var, QMonomial(Coeff(i), 0));
      std::optional<int> val;
      try {
        if (auto m = monomial(body)) {
          acc.add(m->c, m->m);
          if (!m->is_zero()) val = m->m;
        } else {
          QSeries t = series(body, prec);
          acc.add(t);
          if (!t.is_zero()) val = t.val();
        }
      } catch (...) {
        locals_.pop_back();
        throw;
      }
      locals_.pop_back();
      if (infinite) {
        try {
          if (!tracker.observe(val)) break;
        } catch (const Error& err) {
          throw Error(err.kind(), err.what() + std::string(" in sum over ") + var + where(), e.span);
        }
      }
    }
    return acc.result();
  }

  QSeries dqx(const Expr& e, int prec) {
    long n = integer(*e.args[0], "derivative order");
    if (n < 0) throw Error(ErrorKind::EvalError, "derivative order must be nonnegative" + where(), e.span);
    QMonomial point = require_monomial(*e.args[2], "evaluation point");
    int p = prec;
    for (int attempt = 0; attempt < 2; ++attempt) {
      BiSeries f = bi(*e.args[1], p);
      for (long i = 0; i < n; ++i) f = bi_qderivative(f);
      if (point.m < 0 && attempt == 0 && f.degree_bound() > 0) {
        p = clamp_int(static_cast<long>(prec) - static_cast<long>(f.degree_bound()) * point.m);
        continue;
      }
      return bi_eval(f, point, prec);
    }
    BiSeries f = bi(*e.args[1], p);
    for (long i = 0; i < n; ++i) f = bi_qderivative(f);
    return bi_eval(f, point, prec);
  }

  // ------------------------------------------------------------ bi mode (formal x)

  BiSeries bi(const Expr& e, int prec) {
    if (!mentions_x(e)) return BiSeries::constant(series(e, prec));
    switch (e.kind) {
      case NodeKind::Symbol:
        return BiSeries::x(prec);
      case NodeKind::Neg:
        return -bi(*e.args[0], prec);
      case NodeKind::Add:
        return bi(*e.args[0], prec) + bi(*e.args[1], prec);
      case NodeKind::Sub:
        return bi(*e.args[0], prec) + (-bi(*e.args[1], prec));
      case NodeKind::Mul:
        return bi(*e.args[0], prec) * bi(*e.args[1], prec);
      case NodeKind::Div: {
        if (mentions_x(*e.args[1]))
          throw Error(ErrorKind::EvalError, "division by an expression in x" + where(), e.span);
        BiSeries num = bi(*e.args[0], prec);
        QSeries den = series(*e.args[1], prec);
        if (den.is_zero()) throw Error(ErrorKind::ZeroSeries, "division by zero" + where(), e.span);
        QSeries inv = invert(den, prec - den.val());
        std::vector<QSeries> c;
        for (const auto& s : num.coeffs()) c.push_back(s * inv);
        return BiSeries(std::move(c));
      }
      case NodeKind::Pow: {
        long k = integer(*e.args[1], "exponent");
        if (k < 0) throw Error(ErrorKind::EvalError, "negative power of an expression in x" + where(), e.span);
        BiSeries base = bi(*e.args[0], prec);
        BiSeries r = BiSeries::constant(QSeries::one(prec));
        for (long i = 0; i < k; ++i) r = r * base;
        return r;
      }
      case NodeKind::Call:
        if (e.name == "qpoch") {
          BiSeries x = bi(*e.args[0], prec);
          int k = base_of(*e.args[1]);
          long n = integer(*e.args[2], "qpoch length");
          if (n < 0)
            throw Error(ErrorKind::EvalError, "qpoch in x needs a nonnegative length" + where(), e.span);
          BiSeries r = BiSeries::constant(QSeries::one(prec));
          for (long j = 0; j < n; ++j) {
            std::vector<QSeries> c;
            for (const auto& s : x.coeffs()) c.push_back(-s.shifted(clamp_int(static_cast<long>(k) * j)));
            if (c.empty()) c.push_back(QSeries::zero(prec));
            c[0] = c[0] + QSeries::one(prec);
            r = r * BiSeries(std::move(c));
          }
          return r;
        }
        if (e.name == "polyF") {
          BiSeries x = bi(*e.args[0], prec);
          BiSeries r;
          for (std::size_t i = env_.poly_f.size(); i-- > 0;)
            r = r * x + BiSeries::constant(QSeries::monomial(QMonomial(env_.poly_f[i], 0), prec));
          return r;
        }
        [[fallthrough]];
      default:
        throw Error(ErrorKind::EvalError, "'" + print(e) + "' cannot be expanded in the formal variable x", e.span);
    }
  }

  // ------------------------------------------------------------ exact mode

  RatFunc exact(const Expr& e) {
    switch (e.kind) {
      case NodeKind::Number:
      case NodeKind::Q:
      case NodeKind::Symbol:
        return RatFunc::monomial(*monomial(e));
      case NodeKind::Neg:
        return -exact(*e.args[0]);
      case NodeKind::Add:
        return exact(*e.args[0]) + exact(*e.args[1]);
      case NodeKind::Sub:
        return exact(*e.args[0]) - exact(*e.args[1]);
      case NodeKind::Mul: {
        RatFunc a = exact(*e.args[0]);
        if (a.is_zero()) return a;
        return a * exact(*e.args[1]);
      }
      case NodeKind::Div: {
        RatFunc b = exact(*e.args[1]);
        if (b.is_zero()) throw Error(ErrorKind::ZeroSeries, "division by zero" + where(), e.span);
        return exact(*e.args[0]) / b;
      }
      case NodeKind::Pow: {
        long k = integer(*e.args[1], "exponent");
        RatFunc b = exact(*e.args[0]);
        if (b.is_zero() && k < 0) throw Error(ErrorKind::ZeroSeries, "negative power of zero" + where(), e.span);
        return b.pow(k);
      }
      case NodeKind::Call:
        return exact_call(e);
      case NodeKind::Inf:
      case NodeKind::List:
        break;
    }
    throw Error(ErrorKind::EvalError, "'" + print(e) + "' has no exact value", e.span);
  }

  RatFunc exact_call(const Expr& e) {
    const std::string& name = e.name;
    try {
      if (name == "qpoch") {
        int k = base_of(*e.args[1]);
        long n = integer(*e.args[2], "qpoch length");
        if (auto x = monomial(*e.args[0])) return qpoch_finite_exact(*x, k, n);
        if (n < 0)
          throw Error(ErrorKind::EvalError, "qpoch with a general argument needs a nonnegative length" + where(), e.span);
        RatFunc x = exact(*e.args[0]);
        RatFunc r = RatFunc::one();
        for (long j = 0; j < n; ++j)
          r = r * (RatFunc::one() - x * RatFunc::monomial(QMonomial::q_power(clamp_int(static_cast<long>(k) * j))));
        return r;
      }
      if (name == "phi") return rphi_exact(phi_spec(e));
      if (name == "S") return finite_theta_S(integer(*e.args[0], "index"));
      if (name == "T") return finite_theta_T(integer(*e.args[0], "index"));
      if (name == "sum") {
        if (e.args[2]->kind == NodeKind::Inf)
          throw Error(ErrorKind::NotFinite, "infinite sum has no exact finite value", e.span);
        const std::string& var = sum_var(e);
        long lo = integer(*e.args[1], "sum bound");
        long hi = integer(*e.args[2], "sum bound");
        RatFunc acc;
        for (long i = lo; i <= hi; ++i) {
          locals_.emplace_back(var, QMonomial(Coeff(i), 0));
          try {
            acc = acc + exact(*e.args[3]);
          } catch (...) {
            locals_.pop_back();
            throw;
          }
          locals_.pop_back();
        }
        return acc;
      }
      if (name == "polyF") {
        RatFunc x = exact(*e.args[0]);
        RatFunc r;
        for (std::size_t i = env_.poly_f.size(); i-- > 0;)
          r = r * x + RatFunc::monomial(QMonomial(env_.poly_f[i], 0));
        return r;
      }
    } catch (const Error& err) {
      if (err.has_span()) throw;
      throw Error(err.kind(), err.what() + where(), e.span);
    }
    if (name == "qpochinf" || name == "thetaphi" || name == "thetapsi")
      throw Error(ErrorKind::NotFinite, "'" + name + "' is an infinite object with no exact finite value", e.span);
    throw Error(ErrorKind::EvalError, "'" + name + "' is not supported in exact evaluation", e.span);
  }

 private:
  std::optional<QMonomial> lookup(const Expr& e) {
    for (auto it = locals_.rbegin(); it != locals_.rend(); ++it)
      if (it->first == e.name) return it->second;
    auto it = env_.values.find(e.name);
    if (it == env_.values.end())
      throw Error(ErrorKind::UnboundSymbol, "unbound symbol '" + e.name + "'", e.span);
    return it->second;
  }

  std::string where() const {
    if (locals_.empty()) return "";
    std::string s = " (at ";
    for (std::size_t i = 0; i < locals_.size(); ++i) {
      if (i) s += ", ";
      s += locals_[i].first + "=" + locals_[i].second.c.get_str();
    }
    return s + ")";
  }

  const Environment& env_;
  EvalOptions opts_;
  std::vector<std::pair<std::string, QMonomial>> locals_;
};

}  // namespace

QSeries eval(const Expr& e, const Environment& env, int prec, const EvalOptions& opts) {
  Evaluator ev(env, opts);
  return ev.series(e, prec);
}

std::optional<QMonomial> eval_monomial(const Expr& e, const Environment& env) {
  Evaluator ev(env, EvalOptions{});
  return ev.monomial(e);
}

RatFunc eval_exact(const Expr& e, const Environment& env) {
  Evaluator ev(env, EvalOptions{});
  return ev.exact(e);
}

}  // namespace qseries::dsl
