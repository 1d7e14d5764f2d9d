#include <doctest.h>

#include "qseries/series.hpp"
#include "test_util.hpp"

using namespace qseries;
using qseries::testing::random_series;

namespace {

QSeries poly(std::vector<int> c, int prec, int val = 0) {
  std::vector<Coeff> cs(c.begin(), c.end());
  return QSeries::from_coeffs(val, std::move(cs), prec);
}

bool same(const QSeries& a, const QSeries& b) {
  return a.val() == b.val() && a.prec() == b.prec() && a.agrees_with(b);
}

}  // namespace

TEST_SUITE("series") {
  TEST_CASE("add") {
    auto s = poly({1, 1}, 5) + poly({0, 1}, 5);
    CHECK(s.coefficient(0) == 1);
    CHECK(s.coefficient(1) == 2);
    CHECK(s.prec() == 5);

    auto a = poly({3, 0, 2}, 8);
    auto z = a + QSeries::zero(4);
    CHECK(z.prec() == 4);
    CHECK(z.agrees_with(a));

    auto c = poly({1, -1}, 6, -1) + poly({1}, 6);
    CHECK(c.val() == -1);
    CHECK(c.coefficient(-1) == 1);
    CHECK(c.coefficient(0) == 0);
  }

  TEST_CASE("mul") {
    auto geo = invert(poly({1, -1}, 10), 10);
    auto one = poly({1, -1}, 10) * geo;
    CHECK(one.val() == 0);
    CHECK(one.coefficient(0) == 1);
    for (int e = 1; e <= one.prec(); ++e) CHECK(one.coefficient(e) == 0);

    auto a = poly({1, 2, 3}, 6);
    auto shifted = QSeries::monomial(QMonomial::q_power(4), 20) * a;
    CHECK(shifted.val() == 4);
    CHECK(shifted.prec() == 10);
    CHECK(shifted.coefficient(6) == 3);

    auto p = poly({1, -1}, 10) * poly({1, 0, -1}, 10);
    CHECK(p.coefficient(0) == 1);
    CHECK(p.coefficient(1) == -1);
    CHECK(p.coefficient(2) == -1);
    CHECK(p.coefficient(3) == 1);
    CHECK(p.coefficient(4) == 0);
  }

  TEST_CASE("invert") {
    auto g = invert(poly({1, -1}, 10), 5);
    CHECK(g.val() == 0);
    CHECK(g.prec() == 5);
    for (int e = 0; e <= 5; ++e) CHECK(g.coefficient(e) == 1);

    auto h = invert(poly({0, 1, -1}, 10), 3);
    CHECK(h.val() == -1);
    for (int e = -1; e <= 3; ++e) CHECK(h.coefficient(e) == 1);

    try {
      invert(QSeries::zero(5), 5);
      FAIL("expected ZeroSeries");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::ZeroSeries);
    }
  }

  TEST_CASE("substitute_power and substitute_negate") {
    auto s = substitute_power(poly({1, 1}, 4), 2);
    CHECK(s.coefficient(2) == 1);
    CHECK(s.coefficient(1) == 0);
    CHECK(s.prec() == 9);

    auto psi = poly({1, 1, 0, 1}, 3);
    auto d = substitute_power(psi, 2);
    CHECK(d.prec() == 7);
    CHECK(d.coefficient(0) == 1);
    CHECK(d.coefficient(2) == 1);
    CHECK(d.coefficient(6) == 1);
    CHECK(d.coefficient(7) == 0);
    CHECK(same(substitute_power(psi, 1), psi));

    auto n = substitute_negate(poly({1, 1, 1}, 2));
    CHECK(n.coefficient(1) == -1);
    CHECK(n.coefficient(2) == 1);
    auto even = poly({1, 0, 5, 0, 2}, 4);
    CHECK(same(substitute_negate(even), even));
  }

  TEST_CASE("coefficient") {
    auto s = poly({1, 2}, 5);
    CHECK(s.coefficient(1) == 2);
    CHECK(s.coefficient(-3) == 0);
    try {
      (void)s.coefficient(6);
      FAIL("expected PrecisionExceeded");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::PrecisionExceeded);
    }
  }

  TEST_CASE("bi_qderivative and bi_eval") {
    const int prec = 20;
    auto xk = [&](int k) {
      std::vector<QSeries> c(static_cast<std::size_t>(k + 1), QSeries::zero(prec));
      c[static_cast<std::size_t>(k)] = QSeries::one(prec);
      return BiSeries(c);
    };
    // D x^3 = (1 - q^3) x^2
    auto d = bi_qderivative(xk(3));
    REQUIRE(d.degree_bound() == 2);
    CHECK(d.coeffs()[2].coefficient(0) == 1);
    CHECK(d.coeffs()[2].coefficient(3) == -1);
    CHECK(d.coeffs()[0].is_zero());

    auto dc = bi_qderivative(BiSeries::constant(QSeries::one(prec)));
    for (const auto& c : dc.coeffs()) CHECK(c.is_zero());

    // D^2 x^2 = (1 - q^2)(1 - q)
    auto d2 = bi_qderivative(bi_qderivative(xk(2)));
    auto expect = poly({1, -1, -1, 1}, prec);
    CHECK(d2.coeffs()[0].agrees_with(expect));

    auto f = BiSeries({QSeries::one(prec), QSeries::one(prec)});
    CHECK(bi_eval(f, QMonomial::q_power(1), prec).agrees_with(poly({1, 1}, prec)));
    auto sq = bi_eval(xk(2), QMonomial(Coeff(2, 3), 1), prec);
    CHECK(sq.val() == 2);
    CHECK(sq.coefficient(2) == Coeff(4, 9));
    CHECK(bi_eval(bi_qderivative(xk(1)), QMonomial(Coeff(5), 3), prec).agrees_with(poly({1, -1}, prec)));
  }

  TEST_CASE("ring laws on random series") {
    std::mt19937_64 rng(20240601);
    for (int trial = 0; trial < 25; ++trial) {
      auto a = random_series(rng, -2, 12);
      auto b = random_series(rng, 0, 15);
      auto c = random_series(rng, 1, 10);
      CHECK((a + b).agrees_with(b + a));
      CHECK((a * b).agrees_with(b * a));
      CHECK(((a + b) + c).agrees_with(a + (b + c)));
      CHECK(((a * b) * c).agrees_with(a * (b * c)));
      CHECK((a * (b + c)).agrees_with(a * b + a * c));
      CHECK((a - a).is_zero());
    }
  }

  TEST_CASE("mul precision law against a longer recomputation") {
    std::mt19937_64 rng(77);
    for (int trial = 0; trial < 25; ++trial) {
      auto a_long = random_series(rng, -1, 40);
      auto b_long = random_series(rng, 2, 40);
      auto a = a_long.truncated(9 + trial % 5);
      auto b = b_long.truncated(12);
      auto p = a * b;
      CHECK(p.prec() == std::min(a.prec() + b.val(), b.prec() + a.val()));
      CHECK(p.val() == a.val() + b.val());
      CHECK(p.agrees_with(a_long * b_long));
    }
  }

  TEST_CASE("invert is a two-sided inverse") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 20; ++trial) {
      auto a = random_series(rng, trial % 4 - 1, 25);
      auto b = invert(a, 15);
      auto ab = a * b;
      auto ba = b * a;
      CHECK(ab.agrees_with(QSeries::one(ab.prec())));
      CHECK(ba.agrees_with(QSeries::one(ba.prec())));
      CHECK(b.val() == -a.val());
      CHECK(b.prec() == std::min(15, a.prec() - 2 * a.val()));
    }
  }

  TEST_CASE("substitution composition laws") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 20; ++trial) {
      auto a = random_series(rng, -1, 14);
      CHECK(same(substitute_negate(substitute_negate(a)), a));
      int k1 = 1 + trial % 3, k2 = 1 + (trial / 3) % 3;
      auto lhs = substitute_power(substitute_power(a, k1), k2);
      auto rhs = substitute_power(a, k1 * k2);
      CHECK(lhs.agrees_with(rhs));
    }
  }

  TEST_CASE("q-Leibniz on monomials") {
    const int prec = 30;
    auto x_pow = [&](int k) {
      std::vector<QSeries> c(static_cast<std::size_t>(k + 1), QSeries::zero(prec));
      c[static_cast<std::size_t>(k)] = QSeries::one(prec);
      return BiSeries(c);
    };
    for (int a = 0; a <= 4; ++a) {
      for (int b = 0; b <= 4; ++b) {
        auto direct = bi_qderivative(x_pow(a) * x_pow(b));
        auto joined = bi_qderivative(x_pow(a + b));
        REQUIRE(direct.degree_bound() == joined.degree_bound());
        for (std::size_t k = 0; k < direct.coeffs().size(); ++k)
          CHECK(direct.coeffs()[k].agrees_with(joined.coeffs()[k]));
        // D(x^a x^b) = D(x^a) x^b + q^a x^a D(x^b)
        if (a + b > 0) {
          auto leibniz = bi_qderivative(x_pow(a)) * x_pow(b);
          auto right = bi_qderivative(x_pow(b));
          std::vector<QSeries> shifted;
          for (const auto& c : right.coeffs()) shifted.push_back(c.shifted(a));
          leibniz = leibniz + x_pow(a) * BiSeries(shifted);
          for (int k = 0; k < a + b; ++k) {
            auto want = joined.coeffs()[static_cast<std::size_t>(k)];
            auto got = k <= leibniz.degree_bound() ? leibniz.coeffs()[static_cast<std::size_t>(k)] : QSeries::zero(prec);
            CHECK(got.agrees_with(want));
          }
        }
      }
    }
  }
}
