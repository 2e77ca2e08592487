#include "ordlab/logsum.hpp"

#include <vector>

namespace ordlab {

namespace {

double pairwise_sum_rec(const double* x, std::size_t n) {
  if (n <= 32) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += x[i];
    return s;
  }
  const std::size_t half = n / 2;
  return pairwise_sum_rec(x, half) + pairwise_sum_rec(x + half, n - half);
}

}  // namespace

double pairwise_sum(std::span<const double> x) {
  return pairwise_sum_rec(x.data(), x.size());
}

double log_sum_exp(std::span<const double> x) {
  double m = kLogZero;
  for (double v : x)
    if (v > m) m = v;
  if (m == kLogZero) return kLogZero;
  std::vector<double> t;
  t.reserve(x.size());
  for (double v : x) t.push_back(v == kLogZero ? 0.0 : std::exp(v - m));
  return m + std::log(pairwise_sum_rec(t.data(), t.size()));
}

}  // namespace ordlab
