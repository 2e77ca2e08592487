#include "ordlab/small_ball.hpp"

#include <algorithm>
#include <cmath>

#include "ordlab/errors.hpp"
#include "ordlab/logsum.hpp"
#include "ordlab/parallel.hpp"
#include "ordlab/path_analysis.hpp"
#include "ordlab/rng.hpp"

namespace ordlab {

BridgeTail bridge_sup_tail(double epsilon, double h, std::size_t terms) {
  if (epsilon < 0.0) throw DomainError("bridge_sup_tail: epsilon must be >= 0");
  if (!(h > 0.0)) throw DomainError("bridge_sup_tail: h must be positive");
  if (terms == 0) throw DomainError("bridge_sup_tail: terms must be >= 1");
  if (epsilon == 0.0) return {1.0, 0.0};  // sup of a bridge is >= 0 a.s.

  const double c = 2.0 * epsilon * epsilon / h;
  double sum = 0.0;
  for (std::size_t k = terms; k >= 1; --k) {  // small terms first
    const double kk = static_cast<double>(k);
    const double term = 2.0 * std::exp(-c * kk * kk);
    sum = (k % 2 == 1) ? sum + term : sum - term;
  }
  const double next = static_cast<double>(terms + 1);
  return {std::clamp(sum, 0.0, 1.0), 2.0 * std::exp(-c * next * next)};
}

double bridge_no_exit_probability(double lo, double hi, double x0, double x1,
                                  double h) {
  if (!(lo < hi)) throw DomainError("bridge_no_exit_probability: lo < hi");
  if (!(h > 0.0)) throw DomainError("bridge_no_exit_probability: h > 0");
  if (x0 <= lo || x0 >= hi || x1 <= lo || x1 >= hi) return 0.0;

  const double c = hi - lo;
  const double d = x1 - x0;
  const double inv2h = 1.0 / (2.0 * h);
  double sum = 0.0;
  for (int k = 0;; ++k) {
    double added = 0.0;
    for (int sign = (k == 0 ? 1 : -1); sign <= 1; sign += 2) {
      const double kc = 2.0 * c * (sign * k);
      const double direct = std::exp(-((d + kc) * (d + kc) - d * d) * inv2h);
      const double reflected_arg = x1 + x0 - 2.0 * lo + kc;
      const double reflected =
          std::exp(-(reflected_arg * reflected_arg - d * d) * inv2h);
      added += direct - reflected;
      if (k == 0) break;
    }
    sum += added;
    if (k > 0 && std::abs(added) < 1e-17) break;
    if (k > 64) break;
  }
  return std::clamp(sum, 0.0, 1.0);
}

BridgeMcEstimate bridge_sup_tail_mc(double epsilon, double h,
                                    std::size_t samples, std::size_t grid,
                                    std::uint64_t seed, std::size_t shards,
                                    int threads) {
  if (!(epsilon > 0.0 && h > 0.0))
    throw DomainError("bridge_sup_tail_mc: epsilon and h must be positive");
  if (samples < 1000)
    throw DomainError("bridge_sup_tail_mc: samples must be >= 1000");
  if (grid < 2) throw DomainError("bridge_sup_tail_mc: grid must be >= 2");

  shards = std::min(std::max<std::size_t>(1, shards), samples);
  const double dt = h / static_cast<double>(grid);
  const double sigma = std::sqrt(dt);

  // Per-sample estimator of P(sup < eps): product of conditional no-exit
  // probabilities given the simulated bridge grid values.
  std::vector<double> sum1(shards, 0.0), sum2(shards, 0.0);
  parallel_for_index(shards, threads, [&](std::size_t s) {
    const std::size_t lo_i = samples * s / shards;
    const std::size_t hi_i = samples * (s + 1) / shards;
    RandomStream rng(seed, kStreamBridgeMc + s);
    std::vector<double> walk(grid + 1);
    double acc1 = 0.0, acc2 = 0.0;
    for (std::size_t it = lo_i; it < hi_i; ++it) {
      walk[0] = 0.0;
      for (std::size_t j = 1; j <= grid; ++j)
        walk[j] = walk[j - 1] + sigma * rng.gaussian();
      const double drift = walk[grid] / static_cast<double>(grid);
      double stay = 1.0;
      double prev = 0.0;
      for (std::size_t j = 1; j <= grid && stay > 0.0; ++j) {
        const double bridge = walk[j] - drift * static_cast<double>(j);
        stay *= bridge_no_exit_probability(-epsilon, epsilon, prev, bridge, dt);
        prev = bridge;
      }
      const double tail = 1.0 - stay;
      acc1 += tail;
      acc2 += tail * tail;
    }
    sum1[s] = acc1;
    sum2[s] = acc2;
  });

  double s1 = 0.0, s2 = 0.0;
  for (std::size_t s = 0; s < shards; ++s) {
    s1 += sum1[s];
    s2 += sum2[s];
  }
  const double nd = static_cast<double>(samples);
  const double mean = s1 / nd;
  const double var = std::max(0.0, s2 / nd - mean * mean);
  return {mean, std::sqrt(var / nd)};
}

LogProb ball_log_measure_mc(const GridPath& center, double epsilon,
                            std::size_t samples, std::size_t grid_refine,
                            std::uint64_t seed, std::size_t shards,
                            int threads) {
  center.validate();
  if (!(epsilon > 0.0))
    throw DomainError("ball_log_measure_mc: epsilon must be positive");
  if (samples < 1000)
    throw DomainError("ball_log_measure_mc: samples must be >= 1000");
  if (grid_refine == 0)
    throw DomainError("ball_log_measure_mc: grid_refine must be >= 1");

  const std::size_t m = center.n * grid_refine;  // simulation grid
  shards = std::min(std::max<std::size_t>(1, shards), samples);
  const double sigma = 1.0 / std::sqrt(static_cast<double>(m));

  // Center values on the refined grid: the grid path is piecewise linear.
  std::vector<double> ref(m + 1);
  for (std::size_t k = 0; k <= m; ++k) {
    const std::size_t q = k / grid_refine;
    const std::size_t r = k % grid_refine;
    ref[k] = r == 0 ? center.values[q]
                    : center.values[q] +
                          (center.values[q + 1] - center.values[q]) *
                              (static_cast<double>(r) / grid_refine);
  }

  std::vector<std::uint64_t> hits(shards, 0);
  parallel_for_index(shards, threads, [&](std::size_t s) {
    const std::size_t lo = samples * s / shards;
    const std::size_t hi = samples * (s + 1) / shards;
    RandomStream rng(seed, kStreamBallMc + s);
    std::uint64_t local = 0;
    for (std::size_t it = lo; it < hi; ++it) {
      double x = 0.0;
      bool inside = true;
      for (std::size_t k = 1; k <= m; ++k) {
        x += sigma * rng.gaussian();
        if (std::abs(x - ref[k]) >= epsilon) {
          inside = false;
          break;
        }
      }
      if (inside) ++local;
    }
    hits[s] = local;
  });

  std::uint64_t total = 0;
  for (auto hcount : hits) total += hcount;

  LogProb result;
  if (total == 0) {
    result.log_p = kLogZero;
    result.zero_hits = true;
    result.stderr_log = 0.0;
    return result;
  }
  const double p_hat =
      static_cast<double>(total) / static_cast<double>(samples);
  result.log_p = std::log(static_cast<double>(total)) -
                 std::log(static_cast<double>(samples));
  result.stderr_log = std::sqrt((1.0 - p_hat) / static_cast<double>(total));
  return result;
}

SandwichResult ball_sandwich(const GridPath& center, double epsilon,
                             std::size_t n, std::size_t nodes) {
  center.validate();
  if (!(epsilon > 0.0))
    throw DomainError("ball_sandwich: epsilon must be positive");
  if (n == 0 || center.n % n != 0)
    throw DomainError("ball_sandwich: n must divide center.n");

  SandwichResult res;
  res.n = n;
  res.epsilon = epsilon;
  res.delta_n = chord_deviation(center, n).value;
  if (!(res.delta_n < epsilon)) {
    res.valid = false;
    return res;
  }

  const GridPath sub = center.subsample(n);
  const double nd = static_cast<double>(n);
  const LogProb inner = cylinder_log_measure_exact({sub, epsilon}, nodes);
  const LogProb outer = cylinder_log_measure_exact({sub, 3.0 * epsilon}, nodes);
  res.lower_log = -2.0 * nd * nd * epsilon * epsilon + inner.log_p;
  res.upper_log = outer.log_p;
  res.valid = true;
  return res;
}

std::vector<LocalOrderPoint> local_order_cylinder_estimate(
    const GridPath& center, double beta, std::span<const std::size_t> n_list,
    std::size_t nodes) {
  center.validate();
  if (!(beta > 0.0 && beta < 1.0))
    throw DomainError("local_order_cylinder_estimate: beta must lie in (0,1)");

  std::vector<LocalOrderPoint> out;
  out.reserve(n_list.size());
  for (std::size_t n : n_list) {
    if (n < 2 || center.n % n != 0)
      throw DomainError(
          "local_order_cylinder_estimate: each n must be >= 2 and divide "
          "center.n");
    const double eps_n = std::pow(static_cast<double>(n), -beta);
    const LogProb lp =
        cylinder_log_measure_exact({center.subsample(n), eps_n}, nodes);
    if (!(lp.log_p < 0.0))
      throw ResolutionError(
          "local_order_cylinder_estimate: cylinder mass not below 1");
    const double ratio =
        std::log(-lp.log_p) / (beta * std::log(static_cast<double>(n)));
    out.push_back({n, eps_n, lp.log_p, ratio});
  }
  return out;
}

}  // namespace ordlab
