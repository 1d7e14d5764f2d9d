#pragma once

// Brute-force counting oracles. These deliberately avoid QSeries so that a
// bug in the series code cannot confirm itself.

#include <gmpxx.h>

#include <string_view>
#include <vector>

namespace qseries::oracle {

enum class CountKind { Squares, Triangular, Partitions };

std::string_view to_string(CountKind kind);

struct CountTable {
  CountKind kind;
  int m = 0;  // arity; 0 for partitions
  std::vector<mpz_class> values;
};

/// Number of representations of n = 0..upto as a sum of m squares (order and sign count).
CountTable r_m(int m, int upto);
/// Number of representations as a sum of m triangular numbers (order counts).
CountTable t_m(int m, int upto);
/// Unrestricted partitions p(n).
CountTable partitions(int upto);

/// Truncated product of integer polynomials.
std::vector<mpz_class> convolve(const std::vector<mpz_class>& a, const std::vector<mpz_class>& b, int upto);

}  // namespace qseries::oracle
