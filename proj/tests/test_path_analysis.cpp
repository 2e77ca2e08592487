#include <doctest.h>

#include <cmath>
#include <vector>

#include "ordlab/errors.hpp"
#include "ordlab/fbm.hpp"
#include "ordlab/path_analysis.hpp"

using namespace ordlab;

namespace {

GridPath power_path(std::size_t n, double gamma) {
  GridPath p;
  p.n = n;
  p.values.reserve(n + 1);
  for (std::size_t j = 0; j <= n; ++j)
    p.values.push_back(std::pow(static_cast<double>(j) / n, gamma));
  return p;
}

GridPath tent_path() {
  GridPath p;
  p.n = 2;
  p.values = {0.0, 0.5, 0.0};
  return p;
}

}  // namespace

TEST_SUITE_BEGIN("path_analysis");

TEST_CASE("quadratic variation closed cases") {
  const GridPath line = power_path(16, 1.0);
  for (std::size_t m : {1ul, 2ul, 4ul, 8ul, 16ul})
    CHECK(quadratic_variation(line, m) ==
          doctest::Approx(1.0 / m).epsilon(1e-14));

  const GridPath flat = GridPath::zeros(8);
  CHECK(quadratic_variation(flat, 4) == 0.0);

  CHECK_THROWS_AS(quadratic_variation(line, 3), DomainError);
}

TEST_CASE("brownian Q_m has mean square 1/m") {
  const std::size_t n = 64;
  const int reps = 4000;
  double acc = 0.0;
  for (int r = 0; r < reps; ++r) {
    const GridPath p = simulate_brownian(n, static_cast<std::uint64_t>(r));
    const double q = quadratic_variation(p, n);
    acc += q * q;
  }
  const double mean = acc / reps;  // E[Q_n^2] = 1/n
  CHECK(std::abs(mean - 1.0 / n) < 5.0 * std::sqrt(2.0 / (n * 1.0)) / std::sqrt(reps));
}

TEST_CASE("Q_m scales linearly under path scaling") {
  const GridPath p = simulate_brownian(32, 5);
  GridPath scaled = p;
  for (auto& v : scaled.values) v *= -3.5;
  for (std::size_t m : {2ul, 8ul, 32ul})
    CHECK(quadratic_variation(scaled, m) ==
          doctest::Approx(3.5 * quadratic_variation(p, m)).epsilon(1e-13));
}

TEST_CASE("orey ratios of the identity path are exactly 1") {
  const GridPath line = power_path(256, 1.0);
  const auto est = orey_exponents(line, dyadic_divisors(256));
  CHECK(est.q_minus == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(est.q_plus == doctest::Approx(1.0).epsilon(1e-13));
  for (const auto& [m, r] : est.ratios)
    CHECK(r == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("degenerate paths abort with the offending m") {
  const GridPath flat = GridPath::zeros(16);
  CHECK_THROWS_WITH_AS(orey_exponents(flat, dyadic_divisors(16)),
                       doctest::Contains("m = 2"), DomainError);
}

TEST_CASE("fBm orey ratios concentrate near the Hurst parameter") {
  for (double h : {0.3, 0.7}) {
    const std::size_t n = 1 << 16;
    const FbmGenerator gen(h, n, FbmMethod::circulant);
    std::vector<double> mids;
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
      const auto est = orey_exponents(gen.generate(seed), dyadic_divisors(n));
      mids.push_back(0.5 * (est.q_minus + est.q_plus));
    }
    for (double m : mids) CHECK(std::abs(m - h) < 0.05);
  }
}

TEST_CASE("holder seminorm closed cases") {
  const GridPath line = power_path(64, 1.0);
  CHECK(holder_seminorm(line, 1.0) == doctest::Approx(1.0).epsilon(1e-13));
  // beta = 1/2: ((j-k)/n)^{1-beta} maximized at the full interval
  CHECK(holder_seminorm(line, 0.5) == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(holder_seminorm(GridPath::zeros(16), 0.7) == 0.0);
  CHECK_THROWS_AS(holder_seminorm(line, 0.0), DomainError);
  CHECK_THROWS_AS(holder_seminorm(line, 1.5), DomainError);
}

TEST_CASE("adjacent-scale mode upper-bounds the exact seminorm") {
  for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
    const GridPath p = simulate_brownian(256, seed);
    for (double beta : {0.3, 0.5, 0.9}) {
      const double exact = holder_seminorm(p, beta, HolderMode::exact);
      const double bound =
          holder_seminorm(p, beta, HolderMode::adjacent_upper_bound);
      CHECK(bound >= exact - 1e-12);
      CHECK(bound <= 64.0 * exact);  // stays within a chaining factor
    }
  }
}

TEST_CASE("holder bound controls Q_m") {
  // Q_m <= C m^{-beta} whenever the path has beta-seminorm C.
  for (std::uint64_t seed : {11ull, 12ull}) {
    const GridPath p = simulate_brownian(128, seed);
    for (double beta : {0.3, 0.5}) {
      const double c = holder_seminorm(p, beta);
      for (std::size_t m : {2ul, 8ul, 32ul, 128ul})
        CHECK(quadratic_variation(p, m) <=
              c * std::pow(static_cast<double>(m), -beta) + 1e-12);
    }
  }
}

TEST_CASE("chord deviation closed cases") {
  const GridPath line = power_path(32, 1.0);
  for (std::size_t m : {1ul, 4ul, 16ul})
    CHECK(chord_deviation(line, m).value == doctest::Approx(0.0).epsilon(1e-14));

  const auto full = chord_deviation(line, 32);
  CHECK(full.value == 0.0);
  CHECK(full.no_interior);

  // tent peaking at 0.5 over the single chord from 0 to 0
  CHECK(chord_deviation(tent_path(), 1).value == doctest::Approx(0.5));
}

TEST_CASE("chord deviation ignores affine shifts") {
  const GridPath p = simulate_brownian(64, 3);
  GridPath shifted = p;
  for (std::size_t j = 0; j <= 64; ++j)
    shifted.values[j] += 2.75 * (static_cast<double>(j) / 64.0);
  for (std::size_t m : {1ul, 4ul, 16ul})
    CHECK(chord_deviation(shifted, m).value ==
          doctest::Approx(chord_deviation(p, m).value).epsilon(1e-12));
}

TEST_CASE("power paths: tail ratios follow the computed law") {
  // The first increment n^{-gamma} dominates Q_n for gamma < 1/2, giving
  // tail ratios near gamma + 1/2 (and near 1 for smooth gamma >= 1/2).
  const std::size_t n = 1 << 16;
  for (double gamma : {0.3, 0.6}) {
    const GridPath p = power_path(n, gamma);
    const auto est = orey_exponents(p, dyadic_divisors(n));
    const double want = std::min(1.0, gamma + 0.5);
    CHECK(std::abs(est.q_minus - want) < 0.05);
    CHECK(std::abs(est.q_plus - want) < 0.05);
  }
}

TEST_CASE("lacunary path: ratios computed and bracketed") {
  // sum_j 2^{-j/2} cos(2 pi 2^j t): no closed form asserted, only sanity.
  const std::size_t n = 1 << 12;
  GridPath p;
  p.n = n;
  p.values.resize(n + 1);
  for (std::size_t k = 0; k <= n; ++k) {
    const double t = static_cast<double>(k) / n;
    double v = 0.0;
    for (int j = 0; j < 10; ++j)
      v += std::pow(2.0, -0.5 * j) *
           (std::cos(2.0 * M_PI * std::pow(2.0, j) * t) - 1.0);
    p.values[k] = v;
  }
  const auto est = orey_exponents(p, dyadic_divisors(n));
  CHECK(est.ratios.size() == 12);
  CHECK(est.q_minus <= est.q_plus);
  CHECK(est.q_minus > 0.0);
  CHECK(est.q_plus < 1.0);
}

TEST_SUITE_END();
