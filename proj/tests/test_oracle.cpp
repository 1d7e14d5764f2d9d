#include <doctest.h>

#include "qseries/kernels.hpp"
#include "qseries/oracle.hpp"
#include "test_util.hpp"

using namespace qseries;
using namespace qseries::oracle;

namespace {

/// Ordered m-tuples of integers with squares summing to n, by recursion.
long count_squares(int m, int n) {
  if (m == 0) return n == 0 ? 1 : 0;
  long total = 0;
  for (int k = -n; k <= n; ++k)
    if (k * k <= n) total += count_squares(m - 1, n - k * k);
  return total;
}

long count_triangular(int m, int n) {
  if (m == 0) return n == 0 ? 1 : 0;
  long total = 0;
  for (int k = 0; k * (k + 1) / 2 <= n; ++k) total += count_triangular(m - 1, n - k * (k + 1) / 2);
  return total;
}

/// Partitions of n into parts of size at most k.
long count_partitions(int n, int k) {
  if (n == 0) return 1;
  if (k == 0) return 0;
  return count_partitions(n, k - 1) + (k <= n ? count_partitions(n - k, k) : 0);
}

}  // namespace

TEST_SUITE("oracle") {
  TEST_CASE("small values") {
    CHECK(r_m(2, 5).values[1] == 4);
    CHECK(t_m(2, 5).values[1] == 2);
    CHECK(partitions(10).values[4] == 5);
    for (int m = 1; m <= 4; ++m) {
      CHECK(r_m(m, 3).values[0] == 1);
      CHECK(t_m(m, 3).values[0] == 1);
    }
    CHECK(partitions(0).values == std::vector<mpz_class>{1});
  }

  TEST_CASE("tables agree with direct enumeration") {
    for (int m = 1; m <= 4; ++m) {
      auto r = r_m(m, 30);
      auto t = t_m(m, 30);
      for (int n = 0; n <= 30; ++n) {
        CHECK(r.values[static_cast<std::size_t>(n)] == count_squares(m, n));
        CHECK(t.values[static_cast<std::size_t>(n)] == count_triangular(m, n));
      }
    }
    auto p = partitions(40);
    for (int n = 0; n <= 40; ++n) CHECK(p.values[static_cast<std::size_t>(n)] == count_partitions(n, n));
  }

  TEST_CASE("t_1 is the triangular indicator") {
    auto t = t_m(1, 100);
    for (int n = 0; n <= 100; ++n) {
      bool tri = false;
      for (int k = 0; k * (k + 1) / 2 <= n; ++k) tri = tri || k * (k + 1) / 2 == n;
      CHECK(t.values[static_cast<std::size_t>(n)] == (tri ? 1 : 0));
    }
  }

  TEST_CASE("Lagrange and Gauss properties") {
    auto r4 = r_m(4, 200);
    for (int n = 1; n <= 200; ++n) CHECK(r4.values[static_cast<std::size_t>(n)] >= 1);
    auto t3 = t_m(3, 1000);
    for (int n = 0; n <= 1000; ++n) CHECK(t3.values[static_cast<std::size_t>(n)] >= 1);
  }

  TEST_CASE("convolution consistency") {
    const int upto = 60;
    for (int m1 = 1; m1 <= 3; ++m1) {
      for (int m2 = 1; m2 <= 3; ++m2) {
        CHECK(convolve(r_m(m1, upto).values, r_m(m2, upto).values, upto) == r_m(m1 + m2, upto).values);
        CHECK(convolve(t_m(m1, upto).values, t_m(m2, upto).values, upto) == t_m(m1 + m2, upto).values);
      }
    }
  }

  TEST_CASE("series coefficients match the tables") {
    const int upto = 100;
    for (int m = 1; m <= 4; ++m) {
      auto phi = power(theta_phi(upto), static_cast<unsigned>(m));
      auto psi = power(theta_psi(upto), static_cast<unsigned>(m));
      auto r = r_m(m, upto);
      auto t = t_m(m, upto);
      for (int n = 0; n <= upto; ++n) {
        CHECK(phi.coefficient(n) == mpq_class(r.values[static_cast<std::size_t>(n)]));
        CHECK(psi.coefficient(n) == mpq_class(t.values[static_cast<std::size_t>(n)]));
      }
    }
    auto gen = invert(qpoch_inf(QMonomial::q_power(1), 1, upto), upto);
    auto p = partitions(upto);
    for (int n = 0; n <= upto; ++n) CHECK(gen.coefficient(n) == mpq_class(p.values[static_cast<std::size_t>(n)]));
  }
}
