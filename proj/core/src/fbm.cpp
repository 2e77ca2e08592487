#include "ordlab/fbm.hpp"

#include <fftw3.h>

#include <Eigen/Cholesky>
#include <Eigen/Core>
#include <cmath>
#include <complex>
#include <list>
#include <mutex>
#include <vector>

#include "ordlab/errors.hpp"
#include "ordlab/rng.hpp"

namespace ordlab {

namespace {

constexpr std::size_t kCholeskyCap = 4096;

// FFTW's planner is not thread-safe; executing distinct plans is.
std::mutex& fftw_planner_mutex() {
  static std::mutex m;
  return m;
}

void fft_backward(std::vector<std::complex<double>>& data) {
  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lock(fftw_planner_mutex());
    plan = fftw_plan_dft_1d(static_cast<int>(data.size()),
                            reinterpret_cast<fftw_complex*>(data.data()),
                            reinterpret_cast<fftw_complex*>(data.data()),
                            FFTW_BACKWARD, FFTW_ESTIMATE);
  }
  fftw_execute(plan);
  {
    std::lock_guard<std::mutex> lock(fftw_planner_mutex());
    fftw_destroy_plan(plan);
  }
}

}  // namespace

double fbm_covariance(double hurst, double s, double t) {
  if (!(hurst > 0.0 && hurst < 1.0))
    throw DomainError("fbm_covariance: hurst must lie in (0,1)");
  if (s < 0.0 || s > 1.0 || t < 0.0 || t > 1.0)
    throw DomainError("fbm_covariance: times must lie in [0,1]");
  const double h2 = 2.0 * hurst;
  return 0.5 * (std::pow(t, h2) + std::pow(s, h2) -
                std::pow(std::abs(t - s), h2));
}

double fgn_covariance(double hurst, std::int64_t k) {
  if (!(hurst > 0.0 && hurst < 1.0))
    throw DomainError("fgn_covariance: hurst must lie in (0,1)");
  const double h2 = 2.0 * hurst;
  const double a = static_cast<double>(std::abs(k));
  return 0.5 * (std::pow(a + 1.0, h2) - 2.0 * std::pow(a, h2) +
                std::pow(std::abs(a - 1.0), h2));
}

struct FbmGenerator::Impl {
  double hurst;
  std::size_t n;
  FbmMethod method;
  bool iid = false;  // H = 1/2: identity factor, skip the matrix product

  // cholesky route
  Eigen::MatrixXd factor;  // lower-triangular L with L L^T = rho

  // circulant route: sqrt of the embedding eigenvalues, length 2n
  std::vector<double> sqrt_eigs;

  void init_cholesky() {
    if (n > kCholeskyCap)
      throw DomainError("simulate_fbm: cholesky method capped at n = 4096");
    if (iid) return;
    Eigen::MatrixXd cov(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j <= i; ++j)
        cov(i, j) = cov(j, i) =
            fgn_covariance(hurst, static_cast<std::int64_t>(i - j));
    Eigen::LLT<Eigen::MatrixXd> llt(cov);
    if (llt.info() != Eigen::Success)
      throw ResolutionError("simulate_fbm: covariance factorization failed");
    factor = llt.matrixL();
  }

  void init_circulant() {
    const std::size_t m = 2 * n;
    std::vector<std::complex<double>> c(m);
    for (std::size_t j = 0; j <= n; ++j)
      c[j] = fgn_covariance(hurst, static_cast<std::int64_t>(j));
    for (std::size_t j = n + 1; j < m; ++j) c[j] = c[m - j];
    fft_backward(c);  // unnormalized DFT of a symmetric row: real eigenvalues

    double max_eig = 0.0;
    for (const auto& v : c) max_eig = std::max(max_eig, v.real());
    const double tol = -1e-8 * max_eig;
    sqrt_eigs.resize(m);
    for (std::size_t k = 0; k < m; ++k) {
      const double lam = c[k].real();
      if (lam < tol)
        throw ResolutionError(
            "simulate_fbm: circulant embedding has a negative eigenvalue");
      sqrt_eigs[k] = std::sqrt(std::max(0.0, lam));
    }
  }

  // Unit-spaced fGn synthesized from the embedding; scaled to mesh 1/n by
  // self-similarity (increment covariance n^{-2H} rho_H).
  GridPath generate(std::uint64_t seed) const {
    RandomStream rng(seed, kStreamFbm);
    std::vector<double> increments(n);
    const double scale = std::pow(static_cast<double>(n), -hurst);

    if (method == FbmMethod::cholesky) {
      Eigen::VectorXd z(n);
      for (std::size_t i = 0; i < n; ++i) z(i) = rng.gaussian();
      if (iid) {
        for (std::size_t i = 0; i < n; ++i) increments[i] = scale * z(i);
      } else {
        Eigen::VectorXd fgn = factor.triangularView<Eigen::Lower>() * z;
        for (std::size_t i = 0; i < n; ++i) increments[i] = scale * fgn(i);
      }
    } else {
      const std::size_t m = 2 * n;
      std::vector<std::complex<double>> a(m);
      a[0] = sqrt_eigs[0] * rng.gaussian();
      a[n] = sqrt_eigs[n] * rng.gaussian();
      const double half = std::sqrt(0.5);
      for (std::size_t k = 1; k < n; ++k) {
        const double u = rng.gaussian();
        const double v = rng.gaussian();
        a[k] = sqrt_eigs[k] * half * std::complex<double>(u, v);
        a[m - k] = std::conj(a[k]);
      }
      fft_backward(a);
      const double norm = 1.0 / std::sqrt(static_cast<double>(m));
      for (std::size_t i = 0; i < n; ++i)
        increments[i] = scale * norm * a[i].real();
    }

    GridPath path;
    path.n = n;
    path.values.resize(n + 1);
    path.values[0] = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      path.values[i + 1] = path.values[i] + increments[i];
    return path;
  }
};

FbmGenerator::FbmGenerator(double hurst, std::size_t n, FbmMethod method)
    : impl_(std::make_unique<Impl>()) {
  if (!(hurst > 0.0 && hurst < 1.0))
    throw DomainError("simulate_fbm: hurst must lie in (0,1)");
  if (n == 0) throw DomainError("simulate_fbm: n must be positive");
  impl_->hurst = hurst;
  impl_->n = n;
  impl_->method = method;
  impl_->iid = (hurst == 0.5);
  if (method == FbmMethod::cholesky)
    impl_->init_cholesky();
  else
    impl_->init_circulant();
}

FbmGenerator::~FbmGenerator() = default;
FbmGenerator::FbmGenerator(FbmGenerator&&) noexcept = default;
FbmGenerator& FbmGenerator::operator=(FbmGenerator&&) noexcept = default;

GridPath FbmGenerator::generate(std::uint64_t seed) const {
  return impl_->generate(seed);
}

double FbmGenerator::hurst() const { return impl_->hurst; }
std::size_t FbmGenerator::n() const { return impl_->n; }

namespace {

// Small LRU of generators so repeated one-shot calls do not refactor.
struct GeneratorCache {
  struct Entry {
    double hurst;
    std::size_t n;
    FbmMethod method;
    std::shared_ptr<const FbmGenerator> gen;
  };
  std::mutex mutex;
  std::list<Entry> entries;

  std::shared_ptr<const FbmGenerator> get(double hurst, std::size_t n,
                                          FbmMethod method) {
    {
      std::lock_guard<std::mutex> lock(mutex);
      for (auto it = entries.begin(); it != entries.end(); ++it) {
        if (it->hurst == hurst && it->n == n && it->method == method) {
          entries.splice(entries.begin(), entries, it);
          return entries.front().gen;
        }
      }
    }
    auto gen = std::make_shared<const FbmGenerator>(hurst, n, method);
    std::lock_guard<std::mutex> lock(mutex);
    entries.push_front({hurst, n, method, gen});
    if (entries.size() > 4) entries.pop_back();
    return gen;
  }
};

GeneratorCache& generator_cache() {
  static GeneratorCache cache;
  return cache;
}

}  // namespace

GridPath simulate_fbm(const FbmSpec& spec) {
  auto gen = generator_cache().get(spec.hurst, spec.n, spec.method);
  return gen->generate(spec.seed);
}

GridPath simulate_brownian(std::size_t n, std::uint64_t seed) {
  const FbmMethod method =
      n <= kCholeskyCap ? FbmMethod::cholesky : FbmMethod::circulant;
  return simulate_fbm({0.5, n, seed, method});
}

}  // namespace ordlab
