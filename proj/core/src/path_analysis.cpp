#include "ordlab/path_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ordlab/errors.hpp"

namespace ordlab {

double quadratic_variation(const GridPath& path, std::size_t m) {
  path.validate();
  if (m == 0 || path.n % m != 0)
    throw DomainError("quadratic_variation: m must divide path.n");
  const std::size_t stride = path.n / m;
  double sum = 0.0;
  for (std::size_t i = 1; i <= m; ++i) {
    const double d = path.values[i * stride] - path.values[(i - 1) * stride];
    sum += d * d;
  }
  return std::sqrt(sum / static_cast<double>(m));
}

OreyEstimate orey_exponents(const GridPath& path,
                            std::span<const std::size_t> m_list,
                            std::size_t tail_window) {
  path.validate();
  if (m_list.size() < 2) throw DomainError("orey_exponents: need >= 2 m's");
  for (std::size_t i = 0; i < m_list.size(); ++i) {
    if (m_list[i] < 2) throw DomainError("orey_exponents: m must be >= 2");
    if (i > 0 && m_list[i] <= m_list[i - 1])
      throw DomainError("orey_exponents: m_list must be strictly increasing");
  }

  OreyEstimate est;
  est.ratios.reserve(m_list.size());
  for (std::size_t m : m_list) {
    const double q = quadratic_variation(path, m);
    if (q == 0.0)
      throw DomainError("orey_exponents: degenerate path, Q_m = 0 at m = " +
                        std::to_string(m));
    est.ratios.emplace_back(m, -std::log(q) / std::log(static_cast<double>(m)));
  }

  std::size_t window =
      tail_window == 0 ? (est.ratios.size() + 1) / 2 : tail_window;
  window = std::min(window, est.ratios.size());
  double lo = est.ratios.back().second, hi = lo;
  for (std::size_t i = est.ratios.size() - window; i < est.ratios.size(); ++i) {
    lo = std::min(lo, est.ratios[i].second);
    hi = std::max(hi, est.ratios[i].second);
  }
  est.q_minus = lo;
  est.q_plus = hi;
  return est;
}

namespace {

double holder_exact(const GridPath& path, double beta) {
  const std::size_t n = path.n;
  double best = 0.0;
  for (std::size_t gap = 1; gap <= n; ++gap) {
    const double denom = std::pow(static_cast<double>(gap) / n, beta);
    double max_diff = 0.0;
    for (std::size_t j = 0; j + gap <= n; ++j)
      max_diff =
          std::max(max_diff, std::abs(path.values[j + gap] - path.values[j]));
    best = std::max(best, max_diff / denom);
  }
  return best;
}

// Any gap g decomposes into distinct dyadic jumps 2^l, l <= floor(log2 g),
// so |w(k)-w(j)| <= sum_{l<=i} M_l with M_l the max move over gap 2^l, while
// (g/n)^beta >= (2^i/n)^beta. Maximizing the quotient over i bounds the
// seminorm from above.
double holder_adjacent_bound(const GridPath& path, double beta) {
  const std::size_t n = path.n;
  double bound = 0.0;
  double prefix = 0.0;
  for (std::size_t gap = 1; gap <= n; gap *= 2) {
    double max_diff = 0.0;
    for (std::size_t j = 0; j + gap <= n; ++j)
      max_diff =
          std::max(max_diff, std::abs(path.values[j + gap] - path.values[j]));
    prefix += max_diff;
    bound = std::max(bound,
                     prefix / std::pow(static_cast<double>(gap) / n, beta));
    if (gap > n / 2) break;
  }
  return bound;
}

}  // namespace

double holder_seminorm(const GridPath& path, double beta, HolderMode mode) {
  path.validate();
  if (!(beta > 0.0 && beta <= 1.0))
    throw DomainError("holder_seminorm: beta must lie in (0,1]");
  return mode == HolderMode::exact ? holder_exact(path, beta)
                                   : holder_adjacent_bound(path, beta);
}

ChordDeviation chord_deviation(const GridPath& path, std::size_t m) {
  path.validate();
  if (m == 0 || path.n % m != 0)
    throw DomainError("chord_deviation: m must divide path.n");
  const std::size_t stride = path.n / m;
  if (stride == 1) return {0.0, true};

  double dev = 0.0;
  for (std::size_t block = 0; block < m; ++block) {
    const std::size_t lo = block * stride;
    const double v0 = path.values[lo];
    const double slope = (path.values[lo + stride] - v0) / stride;
    for (std::size_t k = 1; k < stride; ++k) {
      const double chord = v0 + slope * k;
      dev = std::max(dev, std::abs(path.values[lo + k] - chord));
    }
  }
  return {dev, false};
}

std::vector<std::size_t> dyadic_divisors(std::size_t n) {
  if (n < 2 || (n & (n - 1)) != 0)
    throw DomainError("dyadic_divisors: n must be a power of two >= 2");
  std::vector<std::size_t> out;
  for (std::size_t m = 2; m <= n; m *= 2) out.push_back(m);
  return out;
}

}  // namespace ordlab
