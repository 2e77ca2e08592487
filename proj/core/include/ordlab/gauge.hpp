#pragma once

#include <span>
#include <utility>
#include <vector>

namespace ordlab {

// log+ = 1_(1,inf) * log: zero on (0,1], log above 1. Applied before any
// iteration step of the parametric family.
double log_plus(double x);

// q-fold iterate of log+.
double log_plus_iter(double x, int q);

struct ParametricGauge {
  int p = 1;
  int q = 1;
  double alpha = 1.0;
};

struct TabulatedGauge {
  std::vector<double> radius;     // strictly increasing
  std::vector<double> log_value;  // non-decreasing (Hausdorff functions grow)
};

// A Hausdorff function evaluated in log-domain throughout.
//
// Parametric kind:
//   scl^{p,q}_alpha(eps) = 1 / exp^{(p)}(alpha * log+^{(q)}(1/eps)),
// whose log is -exp^{(p-1)}(alpha * log+^{(q)}(1/eps)); the p-fold
// exponential is never formed. p=1,q=1 is eps^alpha; p=2,q=1 is
// exp(-eps^-alpha).
//
// Tabulated kind: linear interpolation in (log eps, log value); power-like
// behavior dominates the use cases.
class GaugeSpec {
 public:
  static GaugeSpec parametric(int p, int q, double alpha);
  static GaugeSpec tabulated(std::vector<std::pair<double, double>> points);

  bool is_parametric() const { return tab_.radius.empty(); }
  const ParametricGauge& parametric_params() const { return par_; }
  const TabulatedGauge& tabulated_params() const { return tab_; }

  double log_eval(double epsilon) const;

 private:
  GaugeSpec() = default;
  ParametricGauge par_;
  TabulatedGauge tab_;
};

inline double gauge_log_eval(const GaugeSpec& g, double epsilon) {
  return g.log_eval(epsilon);
}

struct ScalingConditionReport {
  // scl_alpha(eps) = o(scl_beta(eps^lambda)): log-domain differences along
  // the grid, and the monotone-decay verdict on their tail.
  std::vector<double> diff_shrunk_radius;
  bool shrunk_radius_pass = false;
  // scl_alpha(eps) = o(scl_beta(eps)^lambda)
  std::vector<double> diff_powered_value;
  bool powered_value_pass = false;

  bool pass() const { return shrunk_radius_pass && powered_value_pass; }
};

// Numerically checks the two decay conditions of a scaling family for the
// pair (alpha, beta), alpha > beta > 0, at exponent lambda > 1, along
// eps_grid (must decrease to small radii). The check requires the log-domain
// difference to be strictly decreasing over the tail half of the grid and to
// end below -1.
ScalingConditionReport scaling_condition_check(int p, int q, double alpha,
                                               double beta, double lambda,
                                               std::span<const double> eps_grid);

}  // namespace ordlab
