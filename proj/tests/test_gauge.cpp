#include <doctest.h>

#include <cmath>
#include <vector>

#include "ordlab/errors.hpp"
#include "ordlab/gauge.hpp"

using namespace ordlab;

TEST_SUITE_BEGIN("gauge");

TEST_CASE("log_plus is the positive part of the logarithm") {
  CHECK(log_plus(0.5) == 0.0);
  CHECK(log_plus(1.0) == 0.0);
  CHECK(log_plus(std::exp(1.0)) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(log_plus_iter(std::exp(std::exp(1.0)), 2) ==
        doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("parametric gauge values") {
  // p=1, q=1: eps^alpha
  const auto dim2 = GaugeSpec::parametric(1, 1, 2.0);
  CHECK(gauge_log_eval(dim2, 0.5) == doctest::Approx(std::log(0.25)).epsilon(1e-15));

  // p=2, q=1 at eps=1: log+(1) = 0, so value is exp(-exp(0)) = e^{-1}
  const auto ord1 = GaugeSpec::parametric(2, 1, 1.0);
  CHECK(gauge_log_eval(ord1, 1.0) == -1.0);

  // p=2, q=2 at eps=e^{-e}: log+ log+ (1/eps) = 1, value exp(-e)
  const auto g22 = GaugeSpec::parametric(2, 2, 1.0);
  CHECK(gauge_log_eval(g22, std::exp(-std::exp(1.0))) ==
        doctest::Approx(-std::exp(1.0)).epsilon(1e-12));

  // ord at small eps: log value is -eps^{-alpha}
  const auto ord2 = GaugeSpec::parametric(2, 1, 2.0);
  CHECK(gauge_log_eval(ord2, 0.1) == doctest::Approx(-100.0).epsilon(1e-12));

  CHECK_THROWS_AS(gauge_log_eval(dim2, 0.0), DomainError);
  CHECK_THROWS_AS(gauge_log_eval(dim2, -1.0), DomainError);
  CHECK_THROWS_AS(GaugeSpec::parametric(0, 1, 1.0), DomainError);
  CHECK_THROWS_AS(GaugeSpec::parametric(1, 1, 0.0), DomainError);
}

TEST_CASE("gauges decrease in alpha and increase in eps") {
  for (int p : {1, 2}) {
    for (int q : {1, 2}) {
      const auto g1 = GaugeSpec::parametric(p, q, 1.0);
      const auto g2 = GaugeSpec::parametric(p, q, 1.7);
      double prev = -1e300;
      for (double eps = 0.01; eps <= 1.0; eps *= 1.4) {
        CHECK(gauge_log_eval(g2, eps) <= gauge_log_eval(g1, eps));
        const double v = gauge_log_eval(g1, eps);
        CHECK(v >= prev);  // non-decreasing in eps
        prev = v;
      }
    }
  }
}

TEST_CASE("tabulated gauge interpolates in log-log") {
  // Table sampled from eps^2: interpolation must reproduce the power law.
  std::vector<std::pair<double, double>> pts;
  for (double eps = 1.0 / 1024; eps <= 1.0; eps *= 2.0)
    pts.emplace_back(eps, 2.0 * std::log(eps));
  const auto tab = GaugeSpec::tabulated(pts);
  CHECK(gauge_log_eval(tab, 0.01) ==
        doctest::Approx(2.0 * std::log(0.01)).epsilon(1e-12));
  CHECK(gauge_log_eval(tab, 1.0 / 512) ==
        doctest::Approx(2.0 * std::log(1.0 / 512)).epsilon(1e-12));
  CHECK_THROWS_AS(gauge_log_eval(tab, 1e-5), DomainError);
  CHECK_THROWS_AS(gauge_log_eval(tab, 2.0), DomainError);

  CHECK_THROWS_AS(GaugeSpec::tabulated({{0.5, 0.0}, {0.25, -1.0}}), DomainError);
  CHECK_THROWS_AS(GaugeSpec::tabulated({{0.25, 0.0}, {0.5, -1.0}}), DomainError);
}

TEST_CASE("scaling conditions hold for valid pairs and reject bad input") {
  std::vector<double> grid;
  for (double eps = 0.5; eps > 1e-6; eps *= 0.5) grid.push_back(eps);

  // dim family, alpha=2 > beta=1, lambda=1.5: ratio is eps^{0.5} -> 0
  auto rep = scaling_condition_check(1, 1, 2.0, 1.0, 1.5, grid);
  CHECK(rep.pass());

  // ord family, alpha=2 > beta=1, lambda=1.2
  rep = scaling_condition_check(2, 1, 2.0, 1.0, 1.2, grid);
  CHECK(rep.pass());

  CHECK_THROWS_AS(scaling_condition_check(1, 1, 1.0, 2.0, 1.1, grid),
                  DomainError);
  CHECK_THROWS_AS(scaling_condition_check(1, 1, 2.0, 1.0, 0.9, grid),
                  DomainError);
}

TEST_SUITE_END();
