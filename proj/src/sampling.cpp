#include <algorithm>
#include <limits>
#include <random>
#include <regex>

#include "qseries/corpus.hpp"

namespace qseries::corpus {

namespace {

struct Constraint {
  enum class Kind { ValAtLeast, ValAtMost, CoeffNot } kind;
  dsl::ExprPtr expr;
  int bound = 0;
  Coeff coeff;
};

Constraint parse_constraint(const std::string& text) {
  static const std::regex re(R"(^\s*(val|coeff)\((.*)\)\s*(>=|<=|!=)\s*(-?[0-9]+(/[0-9]+)?)\s*$)");
  std::smatch m;
  if (!std::regex_match(text, m, re)) throw Error(ErrorKind::SyntaxError, "malformed constraint '" + text + "'");
  Constraint c{};
  c.expr = dsl::parse(m[2].str());
  const std::string op = m[3].str();
  if (m[1] == "val") {
    if (op == "!=") throw Error(ErrorKind::SyntaxError, "val constraints take >= or <=: '" + text + "'");
    if (m[5].matched) throw Error(ErrorKind::SyntaxError, "valuation bound must be an integer: '" + text + "'");
    c.kind = op == ">=" ? Constraint::Kind::ValAtLeast : Constraint::Kind::ValAtMost;
    c.bound = std::stoi(m[4].str());
  } else {
    if (op != "!=") throw Error(ErrorKind::SyntaxError, "coeff constraints take !=: '" + text + "'");
    c.kind = Constraint::Kind::CoeffNot;
    c.coeff = Coeff(m[4].str());
    c.coeff.canonicalize();
  }
  return c;
}

bool holds(const Constraint& c, const dsl::Environment& env) {
  auto v = dsl::eval_monomial(*c.expr, env);
  if (!v) throw Error(ErrorKind::EvalError, "constraint expression '" + dsl::print(*c.expr) + "' is not a monomial");
  switch (c.kind) {
    case Constraint::Kind::ValAtLeast:
      return !v->is_zero() && v->m >= c.bound;
    case Constraint::Kind::ValAtMost:
      return !v->is_zero() && v->m <= c.bound;
    case Constraint::Kind::CoeffNot:
      return v->c != c.coeff;
  }
  return false;
}

// Uniform draw in [0, n) independent of the standard library's distributions,
// which are not portable across implementations.
std::uint64_t below(std::mt19937_64& rng, std::uint64_t n) {
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % n;
  std::uint64_t x;
  do x = rng();
  while (x >= limit);
  return x % n;
}

long draw(std::mt19937_64& rng, long lo, long hi) { return lo + static_cast<long>(below(rng, hi - lo + 1)); }

// +-p/r with p, r in 1..9, never +-1 (a coefficient 1 would let q-exponent
// constraints alone decide whether a factor 1 - x q^j vanishes).
Coeff draw_coeff(std::mt19937_64& rng) {
  long p, r;
  do {
    p = draw(rng, 1, 9);
    r = draw(rng, 1, 9);
  } while (p == r);
  Coeff c(p, r);
  c.canonicalize();
  return draw(rng, 0, 1) ? Coeff(-c) : c;
}

constexpr int kSampleBudget = 1000;
constexpr int kMaxPolyDegree = 6;

}  // namespace

bool satisfies(const std::vector<std::string>& constraints, const dsl::Environment& env) {
  return std::all_of(constraints.begin(), constraints.end(),
                     [&](const std::string& s) { return holds(parse_constraint(s), env); });
}

dsl::Environment sample_env(const std::vector<std::string>& symbols, const std::vector<std::string>& constraints,
                            bool uses_poly, std::uint64_t seed) {
  std::vector<Constraint> parsed;
  for (const auto& s : constraints) parsed.push_back(parse_constraint(s));

  // Single-symbol bounds fix each exponent range; joint bounds are enforced
  // by rejection.
  std::map<std::string, std::pair<int, int>> range;
  std::map<std::string, std::optional<int>> lower, upper;
  for (const auto& c : parsed) {
    if (c.expr->kind != dsl::NodeKind::Symbol) continue;
    if (c.kind == Constraint::Kind::ValAtLeast) {
      auto& l = lower[c.expr->name];
      l = l ? std::max(*l, c.bound) : c.bound;
    } else if (c.kind == Constraint::Kind::ValAtMost) {
      auto& u = upper[c.expr->name];
      u = u ? std::min(*u, c.bound) : c.bound;
    }
  }
  for (const auto& s : symbols) {
    int lo = lower[s].value_or(0);
    int hi = lo + 2;
    if (!lower[s] && upper[s] && *upper[s] < 0) {
      lo = *upper[s] - 2;
      hi = *upper[s];
    }
    if (upper[s]) hi = std::min(hi, *upper[s]);
    if (lo > hi)
      throw Error(ErrorKind::UnsatisfiableSignature,
                  "bounds on val(" + s + ") are contradictory: " + std::to_string(lo) + " > " + std::to_string(hi));
    range[s] = {lo, hi};
  }

  std::mt19937_64 rng(seed);
  for (int attempt = 0; attempt < kSampleBudget; ++attempt) {
    dsl::Environment env;
    std::vector<std::string> sorted = symbols;
    std::sort(sorted.begin(), sorted.end());
    for (const auto& s : sorted) {
      auto [lo, hi] = range[s];
      Coeff c = draw_coeff(rng);
      env.values[s] = QMonomial(c, static_cast<int>(draw(rng, lo, hi)));
    }
    if (uses_poly) {
      int degree = static_cast<int>(draw(rng, 1, kMaxPolyDegree));
      for (int i = 0; i <= degree; ++i) {
        Coeff c(draw(rng, -9, 9), draw(rng, 1, 9));
        c.canonicalize();
        env.poly_f.push_back(c);
      }
      if (env.poly_f.back() == 0) env.poly_f.back() = draw_coeff(rng);
    }
    if (std::all_of(parsed.begin(), parsed.end(), [&](const Constraint& c) { return holds(c, env); })) return env;
  }
  throw Error(ErrorKind::UnsatisfiableSignature,
              "no environment satisfying the constraints after " + std::to_string(kSampleBudget) + " draws");
}

}  // namespace qseries::corpus
