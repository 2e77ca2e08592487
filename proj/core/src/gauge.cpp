#include "ordlab/gauge.hpp"

#include <algorithm>
#include <cmath>

#include "ordlab/errors.hpp"

namespace ordlab {

double log_plus(double x) { return x > 1.0 ? std::log(x) : 0.0; }

double log_plus_iter(double x, int q) {
  for (int i = 0; i < q; ++i) x = log_plus(x);
  return x;
}

GaugeSpec GaugeSpec::parametric(int p, int q, double alpha) {
  if (p < 1 || q < 1) throw DomainError("GaugeSpec: p and q must be >= 1");
  if (!(alpha > 0.0)) throw DomainError("GaugeSpec: alpha must be positive");
  GaugeSpec g;
  g.par_ = {p, q, alpha};
  return g;
}

GaugeSpec GaugeSpec::tabulated(std::vector<std::pair<double, double>> points) {
  if (points.size() < 2)
    throw DomainError("GaugeSpec: tabulated gauge needs >= 2 points");
  GaugeSpec g;
  g.tab_.radius.reserve(points.size());
  g.tab_.log_value.reserve(points.size());
  for (const auto& [r, lv] : points) {
    if (!(r > 0.0)) throw DomainError("GaugeSpec: radii must be positive");
    if (!g.tab_.radius.empty()) {
      if (r <= g.tab_.radius.back())
        throw DomainError("GaugeSpec: radii must be strictly increasing");
      if (lv < g.tab_.log_value.back())
        throw DomainError("GaugeSpec: log values must be non-decreasing");
    }
    g.tab_.radius.push_back(r);
    g.tab_.log_value.push_back(lv);
  }
  return g;
}

double GaugeSpec::log_eval(double epsilon) const {
  if (!(epsilon > 0.0))
    throw DomainError("gauge_log_eval: epsilon must be positive");
  if (is_parametric()) {
    double y = par_.alpha * log_plus_iter(1.0 / epsilon, par_.q);
    for (int i = 0; i < par_.p - 1; ++i) y = std::exp(y);
    return -y;
  }
  const auto& r = tab_.radius;
  if (epsilon < r.front() || epsilon > r.back())
    throw DomainError("gauge_log_eval: epsilon outside tabulated range");
  const auto it = std::lower_bound(r.begin(), r.end(), epsilon);
  const std::size_t hi = std::min<std::size_t>(
      std::max<std::ptrdiff_t>(1, it - r.begin()), r.size() - 1);
  const std::size_t lo = hi - 1;
  const double lx0 = std::log(r[lo]), lx1 = std::log(r[hi]);
  const double t = (std::log(epsilon) - lx0) / (lx1 - lx0);
  return tab_.log_value[lo] + t * (tab_.log_value[hi] - tab_.log_value[lo]);
}

namespace {

// Tail of the grid (last half) must decrease strictly and end below -1.
bool tail_decays(std::span<const double> diff) {
  if (diff.size() < 2) return false;
  const std::size_t start = diff.size() / 2;
  for (std::size_t i = start + 1; i < diff.size(); ++i)
    if (!(diff[i] < diff[i - 1])) return false;
  return diff.back() < -1.0;
}

}  // namespace

ScalingConditionReport scaling_condition_check(int p, int q, double alpha,
                                               double beta, double lambda,
                                               std::span<const double> eps_grid) {
  if (!(alpha > beta && beta > 0.0))
    throw DomainError("scaling_condition_check: requires alpha > beta > 0");
  if (!(lambda > 1.0))
    throw DomainError("scaling_condition_check: requires lambda > 1");
  if (eps_grid.size() < 4)
    throw DomainError("scaling_condition_check: need >= 4 grid points");

  const GaugeSpec ga = GaugeSpec::parametric(p, q, alpha);
  const GaugeSpec gb = GaugeSpec::parametric(p, q, beta);

  ScalingConditionReport rep;
  rep.diff_shrunk_radius.reserve(eps_grid.size());
  rep.diff_powered_value.reserve(eps_grid.size());
  for (double eps : eps_grid) {
    const double la = ga.log_eval(eps);
    rep.diff_shrunk_radius.push_back(la - gb.log_eval(std::pow(eps, lambda)));
    rep.diff_powered_value.push_back(la - lambda * gb.log_eval(eps));
  }
  rep.shrunk_radius_pass = tail_decays(rep.diff_shrunk_radius);
  rep.powered_value_pass = tail_decays(rep.diff_powered_value);
  return rep;
}

}  // namespace ordlab
