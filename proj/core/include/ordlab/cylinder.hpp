#pragma once

#include <cstdint>
#include <optional>

#include "ordlab/grid_path.hpp"

namespace ordlab {

// The set of paths within eps of the center at every grid point j/n,
// 1 <= j <= n, where n = center.n.
struct CylinderSpec {
  GridPath center;
  double epsilon = 0.0;

  void validate() const;
};

// A probability carried as its natural logarithm; raw probabilities below
// exp(-700) are never materialized.
struct LogProb {
  double log_p = 0.0;                    // <= 0; -inf is the zero-mass sentinel
  std::optional<double> stderr_log;      // present for Monte Carlo results
  bool zero_hits = false;                // MC saw no hits; log_p is -inf
  bool resolution_warning = false;       // quadrature may under-resolve kernel
  std::size_t nodes_used = 0;            // quadrature node count (exact only)
};

// Wiener measure of the cylinder by sequential one-dimensional integration:
// a density profile on Gauss-Legendre nodes is pushed through the Gaussian
// transition kernel of variance 1/n, shifted by the center increment, one
// slab at a time; accumulation is log-domain log-sum-exp. Cost O(n * nodes^2).
//
// The quadrature interval of each slab is [-eps, eps] intersected with the
// reachable tube of the shifted random walk (16 sigma per step); outside it
// the profile is below the integral's resolution. If the tube leaves the box
// entirely, the full box is used.
LogProb cylinder_log_measure_exact(const CylinderSpec& spec, std::size_t nodes);

// Doubles `nodes` from `start` until the log-measure changes by less than
// rel_tol (relative, with an absolute floor of rel_tol for near-zero logs) or
// the cap is reached; sets resolution_warning when the cap ends the loop.
LogProb cylinder_log_measure_exact_auto(const CylinderSpec& spec,
                                        std::size_t start = 256,
                                        std::size_t cap = 4096,
                                        double rel_tol = 1e-6);

struct McOptions {
  std::size_t samples = 1000000;
  std::uint64_t seed = 0;
  std::size_t shards = 64;  // fixed shard count: results do not depend on the
                            // worker cap, only on (seed, shards)
  int threads = 0;          // <= 0: hardware concurrency
};

// Direct Monte Carlo: Brownian grid paths, membership counting, delta-method
// standard error on the log. Zero hits return the -inf sentinel with the
// zero_hits flag; rare-event extrapolation is intentionally absent.
LogProb cylinder_log_measure_mc(const CylinderSpec& spec, const McOptions& opts);

// log of (2/pi)^{n/2}: the universal cylinder bound at radius n^{-1/2}.
double univ_upper_bound(std::size_t n);

// Closed-form lower bound on -log W(C_n(center, eps)) in terms of the
// quadratic variation q_n = Q_n(center) > 0:
//   n^2 q^2 (1/2 - 2 eps / q) - (n/2) log(2 n eps^2 / pi).
// May be negative (vacuous) for large eps; returned as-is.
double quad_lower_bound_neglog(const CylinderSpec& spec, double q_n);

}  // namespace ordlab
