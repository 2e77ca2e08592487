#pragma once

#include <cstdint>
#include <memory>

#include "ordlab/grid_path.hpp"

namespace ordlab {

// Covariance of fractional Brownian motion on [0,1]:
// E[B^H_t B^H_s] = (t^{2H} + s^{2H} - |t-s|^{2H}) / 2.
double fbm_covariance(double hurst, double s, double t);

// Correlation of unit-spaced fractional Gaussian noise:
// rho_H(k) = (|k+1|^{2H} - 2|k|^{2H} + |k-1|^{2H}) / 2, rho_H(0) = 1.
double fgn_covariance(double hurst, std::int64_t k);

enum class FbmMethod {
  cholesky,   // exact dense factorization, n <= 4096; the reference oracle
  circulant,  // Davies-Harte embedding, fast-transform based; default large-n
};

struct FbmSpec {
  double hurst = 0.5;
  std::size_t n = 0;
  std::uint64_t seed = 0;
  FbmMethod method = FbmMethod::circulant;
};

// Holds the per-(hurst, n, method) precomputation (covariance factor or
// embedding eigenvalues). generate() is const and safe to call concurrently;
// the output is a pure function of the seed.
class FbmGenerator {
 public:
  FbmGenerator(double hurst, std::size_t n, FbmMethod method);
  ~FbmGenerator();
  FbmGenerator(FbmGenerator&&) noexcept;
  FbmGenerator& operator=(FbmGenerator&&) noexcept;

  GridPath generate(std::uint64_t seed) const;

  double hurst() const;
  std::size_t n() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// One-shot simulation; reuses a small process-wide cache of generators.
GridPath simulate_fbm(const FbmSpec& spec);

// Brownian motion: simulate_fbm with hurst = 1/2 (i.i.d. increments of
// variance 1/n); bit-identical to the cholesky route at H = 1/2.
GridPath simulate_brownian(std::size_t n, std::uint64_t seed);

}  // namespace ordlab
