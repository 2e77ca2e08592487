#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "ordlab/cylinder.hpp"
#include "ordlab/grid_path.hpp"

namespace ordlab {

struct BridgeTail {
  double value = 0.0;             // clamped to [0,1]
  double truncation_bound = 0.0;  // alternating-series remainder bound
};

// P(sup_{[0,h]} |bridge| >= eps) as the alternating partial sum
//   2 * sum_{k=1..terms} (-1)^{k-1} exp(-2 k^2 eps^2 / h).
// eps == 0 returns 1 exactly.
BridgeTail bridge_sup_tail(double epsilon, double h, std::size_t terms);

// Probability that a Brownian path from x0 to x1 over a time span h stays
// strictly inside (lo, hi): the image-charge sum, conditional on endpoints.
// Returns 0 if an endpoint lies outside.
double bridge_no_exit_probability(double lo, double hi, double x0, double x1,
                                  double h);

struct BridgeMcEstimate {
  double value = 0.0;
  double stderr_value = 0.0;
};

// Monte Carlo for P(sup_{[0,h]} |bridge| >= eps), unbiased for the continuum
// supremum: grid values are simulated and each sub-interval contributes its
// exact conditional two-sided exit probability (conditional Monte Carlo), so
// no grid-discretization bias remains.
BridgeMcEstimate bridge_sup_tail_mc(double epsilon, double h,
                                    std::size_t samples, std::size_t grid,
                                    std::uint64_t seed,
                                    std::size_t shards = 64, int threads = 0);

// Monte Carlo estimate of the sup-norm ball measure W(B(center, eps)),
// evaluated on the refined grid of grid_refine * center.n points. The
// continuum supremum is not simulated; checking finitely many points biases
// the ball probability upward.
LogProb ball_log_measure_mc(const GridPath& center, double epsilon,
                            std::size_t samples, std::size_t grid_refine,
                            std::uint64_t seed, std::size_t shards = 64,
                            int threads = 0);

struct SandwichResult {
  double lower_log = 0.0;  // <= log W(B(center, 3 eps))
  double upper_log = 0.0;  // >= log W(B(center, 3 eps))
  std::size_t n = 0;
  double epsilon = 0.0;
  double delta_n = 0.0;  // chord deviation at mesh 1/n
  bool valid = false;    // requires delta_n < epsilon
};

// Deterministic two-sided bracket of the ball measure at radius 3*eps from
// exact cylinder quadrature at depth n (a divisor of center.n):
//   lower = -2 n^2 eps^2 + log W(C_n(center, eps)),
//   upper = log W(C_n(center, 3 eps)),
// valid whenever the chord deviation at mesh 1/n is below eps.
SandwichResult ball_sandwich(const GridPath& center, double epsilon,
                             std::size_t n, std::size_t nodes);

struct LocalOrderPoint {
  std::size_t n = 0;
  double epsilon = 0.0;  // n^{-beta}
  double log_cyl = 0.0;  // log W(C_n(center, epsilon))
  double ratio = 0.0;    // log(-log_cyl) / (beta * log n)
};

// Certified lower-bound statistics for the local order: for each n in
// n_list (each >= 2, dividing center.n), with eps_n = n^{-beta},
//   ratio_n = log(-log W(C_n(center, eps_n))) / (beta * log n),
// computed by exact quadrature.
std::vector<LocalOrderPoint> local_order_cylinder_estimate(
    const GridPath& center, double beta, std::span<const std::size_t> n_list,
    std::size_t nodes);

}  // namespace ordlab
