#include <doctest.h>

#include <set>

#include "qseries/corpus.hpp"

using namespace qseries;
using namespace qseries::corpus;

namespace {

const IdentitySpec& main_entry(const std::string& id) {
  for (const auto* e : lookup(id))
    if (e->variant == Variant::Main) return *e;
  throw std::runtime_error("no main entry " + id);
}

dsl::Environment sample_for(const IdentitySpec& spec, const std::map<std::string, int>& knobs, std::uint64_t seed) {
  return sample_env(expand_symbols(spec, knobs), expand_constraints(spec, knobs), spec.signature.uses_poly, seed);
}

bool same_env(const dsl::Environment& a, const dsl::Environment& b) {
  if (a.values.size() != b.values.size() || a.poly_f != b.poly_f) return false;
  for (const auto& [k, v] : a.values) {
    auto it = b.values.find(k);
    if (it == b.values.end() || !(it->second == v)) return false;
  }
  return true;
}

}  // namespace

TEST_SUITE("corpus") {
  TEST_CASE("manifest shape") {
    const auto& all = builtin_corpus();
    std::set<std::string> ids;
    for (const auto& e : all) ids.insert(e.id);
    CHECK(ids.size() >= 55);
    for (const auto& id : ids) {
      CAPTURE(id);
      CHECK_NOTHROW(main_entry(id));
    }
    for (const auto& e : all) {
      CAPTURE(e.id);
      CHECK(!e.ref.empty());
      CHECK(!e.quote.empty());
      if (e.variant != Variant::Main) CHECK(!e.note.empty());
    }

    const auto& rogers = main_entry("ROGERS-65");
    const auto& cons = rogers.signature.constraints;
    CHECK(std::find(cons.begin(), cons.end(), "val(r^2*a*b*c) >= 3") != cons.end());

    const auto& watson = main_entry("WATSON");
    REQUIRE(watson.knobs.size() == 1);
    CHECK(watson.knobs[0].name == "n");
    CHECK(watson.knobs[0].lo == 0);
    CHECK(watson.knobs[0].hi == 12);
    CHECK(watson.finite);

    std::set<Variant> kinds;
    for (const auto* e : lookup("HECKE-E-2")) kinds.insert(e->variant);
    CHECK(kinds == std::set<Variant>{Variant::Main, Variant::AsPrinted, Variant::Conjectured});
    CHECK(lookup("NOSUCH").empty());
    CHECK(is_gating(Variant::Main));
    CHECK_FALSE(is_gating(Variant::AsPrinted));
    CHECK_FALSE(is_gating(Variant::Conjectured));
  }

  TEST_CASE("template expansion") {
    std::map<std::string, int> k{{"m", 2}, {"l", 1}};
    CHECK(expand_template("f(x$list(m; c#))", k) == "f(x, c1, c2)");
    CHECK(expand_template("a$prod(m; (1-b#))", k) == "a*((1-b1))*((1-b2))");
    CHECK(expand_template("q^${l}", k) == "q^1");
    std::map<std::string, int> zero{{"m", 0}};
    CHECK(expand_template("f(x$list(m; c#))", zero) == "f(x)");
    CHECK(expand_template("a$prod(m; b#)", zero) == "a");

    const auto& multi = main_entry("MULTIPROD");
    auto syms = expand_symbols(multi, {{"m", 2}, {"l", 0}});
    CHECK(std::find(syms.begin(), syms.end(), "b2") != syms.end());
    CHECK(std::find(syms.begin(), syms.end(), "c#") == syms.end());
    CHECK(knob_assignments(multi).size() == 12);
  }

  TEST_CASE("sampling") {
    std::vector<std::string> syms{"a", "b"};
    std::vector<std::string> cons{"val(a) >= 2", "val(a*b) >= 3", "coeff(a*b) != 1"};
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
      auto env = sample_env(syms, cons, false, seed);
      CHECK(same_env(env, sample_env(syms, cons, false, seed)));
      CHECK(env.values.at("a").m >= 2);
      CHECK(env.values.at("a").m + env.values.at("b").m >= 3);
      CHECK(satisfies(cons, env));
      for (const auto& [name, v] : env.values) {
        CHECK(abs(v.c.get_num()) <= 9);
        CHECK(v.c.get_den() <= 9);
        CHECK(abs(v.c) != 1);
      }
    }
    auto a = sample_env(syms, cons, false, 1);
    auto b = sample_env(syms, cons, false, 2);
    auto c = sample_env(syms, cons, false, 3);
    CHECK_FALSE((same_env(a, b) && same_env(b, c)));

    try {
      sample_env({"x"}, {"val(x) >= 1", "val(x) <= 0"}, false, 7);
      FAIL("expected UnsatisfiableSignature");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::UnsatisfiableSignature);
    }

    auto poly = sample_env({}, {}, true, 9);
    CHECK(poly.poly_f.size() >= 2);
    CHECK(poly.poly_f.size() <= 7);
    CHECK(sgn(poly.poly_f.back()) != 0);
  }

  TEST_CASE("every signature is satisfiable") {
    for (const auto& spec : builtin_corpus()) {
      for (const auto& knobs : knob_assignments(spec)) {
        CAPTURE(spec.id);
        auto cons = expand_constraints(spec, knobs);
        auto env = sample_for(spec, knobs, 42);
        CHECK(satisfies(cons, env));
        CHECK(env.values.size() == expand_symbols(spec, knobs).size());
      }
    }
  }

  TEST_CASE("verify examples") {
    auto psi = verify(main_entry("PSI-CUBE"), {}, {}, 60);
    CHECK(psi.outcome == Outcome::Pass);
    CHECK(psi.order == 60);

    const auto& watson = main_entry("WATSON");
    auto env = sample_for(watson, {{"n", 0}}, 3);
    auto w = verify(watson, {{"n", 0}}, env, 40);
    CHECK(w.outcome == Outcome::Pass);
    CHECK(w.exact);

    const auto& hecke = main_entry("HECKE-MAIN");
    auto flipped = apply_mutation(mutation_list().front());
    REQUIRE(flipped.id == "HECKE-MAIN");
    REQUIRE(flipped.rhs != hecke.rhs);
    auto henv = sample_for(hecke, {}, 11);
    auto good = verify(hecke, {}, henv, 40);
    auto bad = verify(flipped, {}, henv, 40);
    CHECK(good.outcome == Outcome::Pass);
    REQUIRE(bad.outcome == Outcome::Fail);
    REQUIRE(bad.mismatch.has_value());
    CHECK(bad.mismatch->exponent <= 10);
    CHECK(bad.mismatch->lhs != bad.mismatch->rhs);
  }

  TEST_CASE("verify_entry") {
    RunOptions none;
    none.trials = 0;
    CHECK(verify_entry(main_entry("ROGERS-65"), none).empty());

    RunOptions opts;
    opts.order = 30;
    opts.trials = 3;
    opts.seed = 7;
    auto reports = verify_entry(main_entry("ROGERS-65"), opts);
    REQUIRE(reports.size() == 3);
    for (const auto& r : reports) CHECK(r.outcome == Outcome::Pass);
    CHECK_FALSE(same_env(reports[0].env, reports[1].env));
    CHECK_FALSE(same_env(reports[1].env, reports[2].env));

    auto again = verify_entry(main_entry("ROGERS-65"), opts);
    for (std::size_t i = 0; i < reports.size(); ++i) {
      CHECK(reports[i].seed == again[i].seed);
      CHECK(same_env(reports[i].env, again[i].env));
    }
  }

  TEST_CASE("failures are reproducible from the report") {
    const IdentitySpec* printed = nullptr;
    for (const auto* e : lookup("PSI-Q2-PSI"))
      if (e->variant == Variant::AsPrinted) printed = e;
    REQUIRE(printed != nullptr);
    RunOptions opts;
    opts.order = 20;
    opts.trials = 1;
    auto reports = verify_entry(*printed, opts);
    REQUIRE(reports.size() == 1);
    const auto& r = reports[0];
    CHECK(r.outcome == Outcome::Fail);
    CHECK_FALSE(r.gating_failure());
    auto replay = verify(*printed, r.knobs, r.env, r.order);
    REQUIRE(replay.mismatch.has_value());
    CHECK(replay.mismatch->exponent == r.mismatch->exponent);

    const auto& sears = main_entry("SEARS-32");
    opts.trials = 2;
    for (const auto& rep : verify_entry(sears, opts)) {
      auto env = sample_for(sears, rep.knobs, rep.seed);
      CHECK(same_env(env, rep.env));
      CHECK(rep.seed == env_seed(opts.seed, sears.id, rep.knobs, rep.trial));
    }
  }

  TEST_CASE("lower orders inherit a pass") {
    for (const char* id : {"ROGERS-65", "TRIP-B", "HECKE-D", "GEN-TRANS-C"}) {
      const auto& spec = main_entry(id);
      auto env = sample_for(spec, {}, 5);
      CAPTURE(id);
      REQUIRE(verify(spec, {}, env, 30).outcome == Outcome::Pass);
      for (int order : {0, 5, 17, 29}) CHECK(verify(spec, {}, env, order).outcome == Outcome::Pass);
    }
  }

  TEST_CASE("evaluator errors become ERROR reports") {
    IdentitySpec broken = main_entry("ROGERS-65");
    broken.lhs = "qpochinf(r,1)";
    auto env = sample_for(broken, {}, 1);
    env.values["r"] = QMonomial(Coeff(3), 0);
    auto r = verify(broken, {}, env, 10);
    CHECK(r.outcome == Outcome::Error);
    REQUIRE(r.error_kind.has_value());
    CHECK(*r.error_kind == ErrorKind::DivergentProduct);
    CHECK(r.gating_failure());
  }
}
