#include <doctest.h>

#include "qseries/corpus.hpp"
#include "qseries/dsl.hpp"
#include "test_util.hpp"

using namespace qseries;
using namespace qseries::testing;
namespace dsl = qseries::dsl;

namespace {

QSeries eval_text(const std::string& text, int prec, const dsl::Environment& env = {}) {
  return dsl::eval(*dsl::parse(text), env, prec);
}

ErrorKind error_of(const std::string& text, const dsl::Environment& env = {}) {
  try {
    eval_text(text, 10, env);
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an error for " << text);
  return ErrorKind::EvalError;
}

}  // namespace

TEST_SUITE("dsl") {
  TEST_CASE("parse shapes") {
    auto e = dsl::parse("qpochinf(q, 1)");
    CHECK(e->kind == dsl::NodeKind::Call);
    CHECK(e->name == "qpochinf");
    CHECK(e->args.size() == 2);

    auto s = dsl::parse("sum(n, 0, inf, q^(n*(n+1)/2))");
    CHECK(s->kind == dsl::NodeKind::Call);
    CHECK(s->args[2]->kind == dsl::NodeKind::Inf);
    CHECK(dsl::free_symbols(*s).empty());

    CHECK(dsl::same_tree(*dsl::parse("1 + 2*q^3"), *dsl::parse("1+2*(q^3)")));
    CHECK(dsl::same_tree(*dsl::parse("-q^2"), *dsl::parse("-(q^2)")));
  }

  TEST_CASE("syntax errors carry spans") {
    try {
      dsl::parse("qpoch(q,");
      FAIL("expected SyntaxError");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::SyntaxError);
      REQUIRE(e.has_span());
      CHECK(e.span().start == 8);
    }
    for (const char* bad : {"", "1 +", "(q", "q^", "sum(n,0,inf", "2 3", "q ) "}) {
      CAPTURE(bad);
      CHECK_THROWS_AS(dsl::parse(bad), Error);
    }
  }

  TEST_CASE("unbound symbols") {
    auto e = dsl::parse("qpochinf(a*q, 1) + sum(n, 0, 3, b^n)");
    CHECK(dsl::free_symbols(*e) == std::set<std::string>{"a", "b"});
    try {
      dsl::check_symbols(*e, {"a"});
      FAIL("expected UnboundSymbol");
    } catch (const Error& err) {
      CHECK(err.kind() == ErrorKind::UnboundSymbol);
      REQUIRE(err.has_span());
      CHECK(err.span().start == 32);
    }
    CHECK(error_of("a + 1") == ErrorKind::UnboundSymbol);
  }

  TEST_CASE("evaluation basics") {
    CHECK(window(eval_text("thetaphi", 4), 4) == Poly{1, 2, 0, 0, 2});
    CHECK(window(eval_text("1/qpochinf(q,1)", 6), 6) == Poly{1, 1, 2, 3, 5, 7, 11});

    dsl::Environment env;
    env.values["a"] = QMonomial(Coeff(2), 0);
    CHECK(error_of("qpochinf(a,1)", env) == ErrorKind::DivergentProduct);
    CHECK(error_of("1/(q-q)") == ErrorKind::ZeroSeries);
    CHECK(error_of("sum(n, 0, 3, q^(n/2))") == ErrorKind::EvalError);

    env.values["a"] = QMonomial(Coeff(2, 3), 2);
    auto v = eval_text("a^2 - 1/3*q", 10, env);
    CHECK(v.coefficient(1) == Coeff(-1, 3));
    CHECK(v.coefficient(4) == Coeff(4, 9));
    auto m = dsl::eval_monomial(*dsl::parse("a^3/q^2"), env);
    REQUIRE(m.has_value());
    CHECK(m->c == Coeff(8, 27));
    CHECK(m->m == 4);
  }

  TEST_CASE("eval is homomorphic") {
    dsl::Environment env;
    env.values["a"] = QMonomial(Coeff(-5, 2), 1);
    const std::vector<std::string> parts = {"qpochinf(a,1)", "thetapsi", "1/(1-a*q)", "phi([a],[q^2],1,q)",
                                            "subsq(thetaphi,2)", "qpoch(a/q,1,3)"};
    const int p = 25;
    for (const auto& x : parts) {
      for (const auto& y : parts) {
        auto ex = eval_text(x, p, env);
        auto ey = eval_text(y, p, env);
        CAPTURE(x);
        CAPTURE(y);
        CHECK(eval_text("(" + x + ")+(" + y + ")", p, env).agrees_with(ex + ey));
        CHECK(eval_text("(" + x + ")*(" + y + ")", p, env).agrees_with(ex * ey));
      }
    }
  }

  TEST_CASE("exact evaluation of finite expressions") {
    auto r = dsl::eval_exact(*dsl::parse("qpoch(q,1,3)/qpoch(q,1,2) - (1-q^3)"), {});
    CHECK(r.is_zero());
    auto s = dsl::eval_exact(*dsl::parse("S(2)"), {});
    CHECK(s.to_series(0).coefficient(-4) == 2);
    CHECK(s.to_series(0).coefficient(-1) == -2);
    CHECK_THROWS_AS(dsl::eval_exact(*dsl::parse("qpochinf(q,1)"), {}), Error);
  }

  TEST_CASE("psi cube rhs against a triple convolution") {
    auto entries = corpus::lookup("PSI-CUBE");
    REQUIRE(!entries.empty());
    const int p = 20;
    auto rhs = dsl::eval(*dsl::parse(entries[0]->rhs), {}, p);
    Poly psi(p + 1);
    for (int k = 0; k * (k + 1) / 2 <= p; ++k) psi[static_cast<std::size_t>(k * (k + 1) / 2)] = 1;
    Poly cube(p + 1);
    for (int i = 0; i <= p; ++i)
      for (int j = 0; i + j <= p; ++j)
        for (int k = 0; i + j + k <= p; ++k) cube[static_cast<std::size_t>(i + j + k)] += psi[i] * psi[j] * psi[k];
    CHECK(window(rhs, p) == cube);
  }

  TEST_CASE("corpus expressions round-trip through print") {
    for (const auto& spec : corpus::builtin_corpus()) {
      for (const auto& knobs : corpus::knob_assignments(spec)) {
        for (const auto* side : {&spec.lhs, &spec.rhs}) {
          auto text = corpus::expand_template(*side, knobs);
          CAPTURE(spec.id);
          CAPTURE(text);
          auto tree = dsl::parse(text);
          auto again = dsl::parse(dsl::print(*tree));
          CHECK(dsl::same_tree(*tree, *again));
          std::set<std::string> declared;
          for (const auto& s : corpus::expand_symbols(spec, knobs)) declared.insert(s);
          for (const auto& [name, value] : knobs) declared.insert(name);
          CHECK_NOTHROW(dsl::check_symbols(*tree, declared));
        }
      }
    }
  }
}
