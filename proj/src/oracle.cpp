#include "qseries/oracle.hpp"

#include <stdexcept>

namespace qseries::oracle {

std::string_view to_string(CountKind kind) {
  switch (kind) {
    case CountKind::Squares:
      return "squares";
    case CountKind::Triangular:
      return "triangular";
    case CountKind::Partitions:
      return "partitions";
  }
  return "?";
}

std::vector<mpz_class> convolve(const std::vector<mpz_class>& a, const std::vector<mpz_class>& b, int upto) {
  std::vector<mpz_class> r(static_cast<std::size_t>(upto + 1));
  for (std::size_t i = 0; i < a.size() && i <= static_cast<std::size_t>(upto); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size() && i + j <= static_cast<std::size_t>(upto); ++j)
      if (b[j] != 0) r[i + j] += a[i] * b[j];
  }
  return r;
}

namespace {

CountTable m_fold(CountKind kind, int m, int upto, const std::vector<mpz_class>& base) {
  if (m < 1) throw std::invalid_argument("arity must be at least 1");
  CountTable t{kind, m, {}};
  std::vector<mpz_class> acc(static_cast<std::size_t>(upto + 1));
  acc[0] = 1;
  for (int i = 0; i < m; ++i) acc = convolve(acc, base, upto);
  t.values = std::move(acc);
  return t;
}

}  // namespace

CountTable r_m(int m, int upto) {
  if (upto < 0) return {CountKind::Squares, m, {}};
  // One coordinate: k = 0 once, each k > 0 twice (for +k and -k).
  std::vector<mpz_class> base(static_cast<std::size_t>(upto + 1));
  for (long k = 0; k * k <= upto; ++k) base[static_cast<std::size_t>(k * k)] += (k == 0 ? 1 : 2);
  return m_fold(CountKind::Squares, m, upto, base);
}

CountTable t_m(int m, int upto) {
  if (upto < 0) return {CountKind::Triangular, m, {}};
  std::vector<mpz_class> base(static_cast<std::size_t>(upto + 1));
  for (long k = 0; k * (k + 1) / 2 <= upto; ++k) base[static_cast<std::size_t>(k * (k + 1) / 2)] += 1;
  return m_fold(CountKind::Triangular, m, upto, base);
}

CountTable partitions(int upto) {
  CountTable t{CountKind::Partitions, 0, {}};
  if (upto < 0) return t;
  // Classic coin-change recurrence: allow parts 1, 2, ..., upto in turn.
  std::vector<mpz_class> p(static_cast<std::size_t>(upto + 1));
  p[0] = 1;
  for (int part = 1; part <= upto; ++part)
    for (int n = part; n <= upto; ++n) p[static_cast<std::size_t>(n)] += p[static_cast<std::size_t>(n - part)];
  t.values = std::move(p);
  return t;
}

}  // namespace qseries::oracle
