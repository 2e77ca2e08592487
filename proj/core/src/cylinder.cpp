#include "ordlab/cylinder.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <vector>

#include "ordlab/errors.hpp"
#include "ordlab/logsum.hpp"
#include "ordlab/parallel.hpp"
#include "ordlab/rng.hpp"

namespace ordlab {

void CylinderSpec::validate() const {
  center.validate();
  if (!(epsilon > 0.0)) throw DomainError("CylinderSpec: epsilon must be > 0");
}

namespace {

struct GlRule {
  std::vector<double> x;  // nodes on [-1, 1]
  std::vector<double> w;
};

// Gauss-Legendre nodes by Newton iteration on the Legendre recurrence.
GlRule compute_gl(std::size_t n) {
  GlRule rule;
  rule.x.resize(n);
  rule.w.resize(n);
  const std::size_t half = (n + 1) / 2;
  for (std::size_t i = 0; i < half; ++i) {
    double t = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = t;
      for (std::size_t k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * t * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (t * p1 - p0) / (t * t - 1.0);
      const double dt = p1 / dp;
      t -= dt;
      if (std::abs(dt) < 1e-15) break;
    }
    rule.x[i] = -t;
    rule.x[n - 1 - i] = t;
    const double w = 2.0 / ((1.0 - t * t) * dp * dp);
    rule.w[i] = w;
    rule.w[n - 1 - i] = w;
  }
  return rule;
}

const GlRule& gl_rule(std::size_t n) {
  static std::mutex mutex;
  static std::map<std::size_t, GlRule> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, compute_gl(n)).first;
  return it->second;
}

struct Slab {
  std::vector<double> x;     // quadrature nodes in the slab interval
  std::vector<double> logw;  // log of the mapped weights
  double width = 0.0;
};

Slab make_slab(const GlRule& rule, double lo, double hi) {
  Slab s;
  const double mid = 0.5 * (lo + hi);
  const double halfw = 0.5 * (hi - lo);
  s.width = hi - lo;
  s.x.resize(rule.x.size());
  s.logw.resize(rule.x.size());
  const double logh = std::log(halfw);
  for (std::size_t i = 0; i < rule.x.size(); ++i) {
    s.x[i] = mid + halfw * rule.x[i];
    s.logw[i] = std::log(rule.w[i]) + logh;
  }
  return s;
}

}  // namespace

LogProb cylinder_log_measure_exact(const CylinderSpec& spec,
                                   std::size_t nodes) {
  spec.validate();
  if (nodes < 8)
    throw DomainError("cylinder_log_measure_exact: nodes must be >= 8");

  const std::size_t n = spec.center.n;
  const double eps = spec.epsilon;
  const double nd = static_cast<double>(n);
  const double log_norm = 0.5 * std::log(nd / (2.0 * std::numbers::pi));
  const double sigma_step = 1.0 / std::sqrt(nd);
  constexpr double kReach = 16.0;  // per-step tube: tails below e^{-128}

  const GlRule& rule = gl_rule(nodes);

  LogProb result;
  result.nodes_used = nodes;

  // Reachable tube of the constrained walk, intersected with the box.
  double tube_lo = 0.0, tube_hi = 0.0;
  double max_rel_width = 0.0;

  std::vector<double> profile;          // log f_i at current slab nodes
  std::vector<double> terms(nodes);     // scratch for one log-sum-exp row
  Slab cur;

  for (std::size_t i = 1; i <= n; ++i) {
    const double d = spec.center.values[i] - spec.center.values[i - 1];
    double lo = std::max(-eps, tube_lo + d - kReach * sigma_step);
    double hi = std::min(eps, tube_hi + d + kReach * sigma_step);
    if (!(lo < hi)) {  // drifted outside the box: integrate the whole slab
      lo = -eps;
      hi = eps;
    }
    tube_lo = lo;
    tube_hi = hi;
    Slab next = make_slab(rule, lo, hi);
    max_rel_width = std::max(max_rel_width, (hi - lo) / sigma_step);

    if (i == 1) {
      profile.resize(nodes);
      for (std::size_t a = 0; a < nodes; ++a) {
        const double u = next.x[a] - d;
        profile[a] = log_norm - 0.5 * nd * u * u;
      }
    } else {
      std::vector<double> out(nodes);
      for (std::size_t a = 0; a < nodes; ++a) {
        double m = kLogZero;
        for (std::size_t b = 0; b < nodes; ++b) {
          const double u = next.x[a] - cur.x[b] - d;
          const double t = profile[b] + cur.logw[b] + log_norm -
                           0.5 * nd * u * u;
          terms[b] = t;
          if (t > m) m = t;
        }
        if (m == kLogZero) {
          out[a] = kLogZero;
          continue;
        }
        for (std::size_t b = 0; b < nodes; ++b)
          terms[b] = terms[b] == kLogZero ? 0.0 : std::exp(terms[b] - m);
        out[a] = m + std::log(pairwise_sum(terms));
      }
      profile.swap(out);
    }
    cur = std::move(next);
  }

  for (std::size_t b = 0; b < nodes; ++b)
    terms[b] = profile[b] + cur.logw[b];
  result.log_p = std::min(0.0, log_sum_exp(terms));
  // Node spacing must resolve the kernel width 1/sqrt(n).
  result.resolution_warning = max_rel_width / (2.0 * nodes) > 1.0;
  return result;
}

LogProb cylinder_log_measure_exact_auto(const CylinderSpec& spec,
                                        std::size_t start, std::size_t cap,
                                        double rel_tol) {
  LogProb prev = cylinder_log_measure_exact(spec, start);
  for (std::size_t nodes = start * 2; nodes <= cap; nodes *= 2) {
    LogProb cur = cylinder_log_measure_exact(spec, nodes);
    const double change = std::abs(cur.log_p - prev.log_p) /
                          std::max(std::abs(cur.log_p), 1.0);
    if (change < rel_tol) return cur;
    prev = cur;
  }
  prev.resolution_warning = true;
  return prev;
}

LogProb cylinder_log_measure_mc(const CylinderSpec& spec,
                                const McOptions& opts) {
  spec.validate();
  if (opts.samples < 1000)
    throw DomainError("cylinder_log_measure_mc: samples must be >= 1000");
  if (opts.shards == 0)
    throw DomainError("cylinder_log_measure_mc: shards must be >= 1");

  const std::size_t n = spec.center.n;
  const double eps = spec.epsilon;
  const double sigma = 1.0 / std::sqrt(static_cast<double>(n));
  const std::size_t shards = std::min(opts.shards, opts.samples);
  std::vector<std::uint64_t> hits(shards, 0);

  parallel_for_index(shards, opts.threads, [&](std::size_t s) {
    const std::size_t lo = opts.samples * s / shards;
    const std::size_t hi = opts.samples * (s + 1) / shards;
    RandomStream rng(opts.seed, kStreamCylinderMc + s);
    std::uint64_t local = 0;
    for (std::size_t k = lo; k < hi; ++k) {
      double x = 0.0;
      bool inside = true;
      for (std::size_t j = 1; j <= n; ++j) {
        x += sigma * rng.gaussian();
        if (std::abs(x - spec.center.values[j]) > eps) {
          inside = false;
          break;
        }
      }
      if (inside) ++local;
    }
    hits[s] = local;
  });

  std::uint64_t total = 0;
  for (auto h : hits) total += h;

  LogProb result;
  if (total == 0) {
    result.log_p = kLogZero;
    result.zero_hits = true;
    result.stderr_log = 0.0;
    return result;
  }
  const double p_hat =
      static_cast<double>(total) / static_cast<double>(opts.samples);
  result.log_p = std::log(static_cast<double>(total)) -
                 std::log(static_cast<double>(opts.samples));
  // delta method: sd(log p_hat) ~= sqrt((1-p)/(p N)) = sqrt((1-p_hat)/hits)
  result.stderr_log = std::sqrt((1.0 - p_hat) / static_cast<double>(total));
  return result;
}

double univ_upper_bound(std::size_t n) {
  if (n == 0) throw DomainError("univ_upper_bound: n must be >= 1");
  return 0.5 * static_cast<double>(n) * std::log(2.0 / std::numbers::pi);
}

double quad_lower_bound_neglog(const CylinderSpec& spec, double q_n) {
  spec.validate();
  if (!(q_n > 0.0))
    throw DomainError("quad_lower_bound_neglog: Q_n must be positive");
  const double n = static_cast<double>(spec.center.n);
  const double eps = spec.epsilon;
  return n * n * q_n * q_n * (0.5 - 2.0 * eps / q_n) -
         0.5 * n * std::log(2.0 * n * eps * eps / std::numbers::pi);
}

}  // namespace ordlab
