#pragma once

#include <cmath>
#include <limits>
#include <span>

namespace ordlab {

// log 0 sentinel. Probabilities are carried as natural logs everywhere;
// values below exp(-700) must never be materialized as raw doubles.
inline constexpr double kLogZero = -std::numeric_limits<double>::infinity();

inline double log_add_exp(double a, double b) {
  if (a == kLogZero) return b;
  if (b == kLogZero) return a;
  const double m = a > b ? a : b;
  const double d = a > b ? b - a : a - b;
  return m + std::log1p(std::exp(d));
}

// Pairwise (cascade) summation: rounding error grows like log2(n)*eps
// instead of n*eps.
double pairwise_sum(std::span<const double> x);

// max-shifted log(sum(exp(x_i))) with pairwise accumulation.
double log_sum_exp(std::span<const double> x);

}  // namespace ordlab
