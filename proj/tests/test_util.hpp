#pragma once

// Reference arithmetic for the unit tests. Plain coefficient vectors indexed
// from exponent 0, multiplied by schoolbook loops, so expectations never go
// through QSeries.

#include <gmpxx.h>

#include <cstdint>
#include <random>
#include <vector>

#include "qseries/series.hpp"

namespace qseries::testing {

using Poly = std::vector<mpq_class>;

inline Poly poly_mul(const Poly& a, const Poly& b, int upto) {
  Poly out(static_cast<std::size_t>(upto + 1));
  for (std::size_t i = 0; i < a.size() && static_cast<int>(i) <= upto; ++i) {
    if (sgn(a[i]) == 0) continue;
    for (std::size_t j = 0; j < b.size() && static_cast<int>(i + j) <= upto; ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

/// prod_{j>=1} (1 - q^j) truncated at upto, one factor at a time.
inline Poly euler_product(int upto) {
  Poly out(static_cast<std::size_t>(upto + 1));
  out[0] = 1;
  for (int j = 1; j <= upto; ++j) {
    Poly f(static_cast<std::size_t>(j + 1));
    f[0] = 1;
    f[static_cast<std::size_t>(j)] = -1;
    out = poly_mul(out, f, upto);
  }
  return out;
}

/// Coefficients of s at exponents 0..upto.
inline Poly window(const QSeries& s, int upto) {
  Poly out;
  for (int e = 0; e <= upto; ++e) out.push_back(s.coefficient(e));
  return out;
}

inline Poly indicator(int upto, bool (*member)(int)) {
  Poly out(static_cast<std::size_t>(upto + 1));
  for (int e = 0; e <= upto; ++e) out[static_cast<std::size_t>(e)] = member(e) ? 1 : 0;
  return out;
}

/// Random series with small rational coefficients on val..prec.
inline QSeries random_series(std::mt19937_64& rng, int val, int prec) {
  std::uniform_int_distribution<int> num(-9, 9);
  std::uniform_int_distribution<int> den(1, 9);
  std::vector<Coeff> c;
  for (int e = val; e <= prec; ++e) c.emplace_back(num(rng), den(rng));
  if (!c.empty() && sgn(c[0]) == 0) c[0] = 1;
  for (auto& x : c) x.canonicalize();
  return QSeries::from_coeffs(val, std::move(c), prec);
}

}  // namespace qseries::testing
