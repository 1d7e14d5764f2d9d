#pragma once

// Expression language for q-series.
//
//   expr     := term (('+' | '-') term)*
//   term     := factor (('*' | '/') factor)*
//   factor   := '-' factor | atom ('^' exponent)?
//   exponent := '-' exponent | atom
//   atom     := integer | 'q' | 'inf' | symbol | call | '(' expr ')' | '[' list ']'
//   call     := name '(' (expr (',' expr)*)? ')'
//
// Built-in calls:
//   qpoch(x, k, n)        (x; q^k)_n, any integer n
//   qpochinf(x, k)        (x; q^k)_inf
//   phi([a..], [b..], k, z)  basic hypergeometric series in base q^k
//   thetaphi, thetapsi    Ramanujan's theta functions (parentheses optional)
//   S(n), T(n)            finite theta functions
//   sum(v, lo, hi, body)  hi may be 'inf'
//   subsq(body, k)        q -> q^k
//   subsnegq(body)        q -> -q
//   polyF(x)              the environment's test polynomial
//   dqx(n, body, point)   n-th q-derivative in the formal variable x, evaluated at point

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "qseries/kernels.hpp"
#include "qseries/ratfunc.hpp"
#include "qseries/series.hpp"

namespace qseries::dsl {

enum class NodeKind { Number, Q, Inf, Symbol, List, Neg, Add, Sub, Mul, Div, Pow, Call };

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
  NodeKind kind = NodeKind::Number;
  SourceSpan span;
  mpz_class number;          // Number
  std::string name;          // Symbol, Call
  std::vector<ExprPtr> args; // operands, call arguments, list items
};

ExprPtr parse(std::string_view text);
std::string print(const Expr& e);
/// Structural equality ignoring spans.
bool same_tree(const Expr& a, const Expr& b);

/// Free symbols (sum variables and the x of dqx are bound).
std::set<std::string> free_symbols(const Expr& e);
/// UnboundSymbol (with span) for the first free symbol not in declared.
void check_symbols(const Expr& e, const std::set<std::string>& declared);

struct Environment {
  std::map<std::string, QMonomial> values;
  /// Coefficients f_0.. of the test polynomial used by polyF.
  std::vector<Coeff> poly_f;
};

struct EvalOptions {
  int stall_window = 8;
  int hard_cap = 10000;
};

/// Series value known at least to prec whenever the expression allows it.
QSeries eval(const Expr& e, const Environment& env, int prec, const EvalOptions& opts = {});
/// Value of an expression that reduces to a single monomial c*q^m, if it does.
std::optional<QMonomial> eval_monomial(const Expr& e, const Environment& env);
/// Exact value of a finite expression (no infinite sums or products).
RatFunc eval_exact(const Expr& e, const Environment& env);

}  // namespace qseries::dsl
