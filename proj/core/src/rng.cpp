#include "ordlab/rng.hpp"

#include <cmath>

#include "ordlab/errors.hpp"

namespace ordlab {

namespace {

constexpr std::uint32_t kMult0 = 0xD2511F53u;
constexpr std::uint32_t kMult1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

inline Philox4x32::Block philox_round(const Philox4x32::Block& c,
                                      std::uint32_t k0, std::uint32_t k1) {
  const std::uint64_t p0 = static_cast<std::uint64_t>(kMult0) * c[0];
  const std::uint64_t p1 = static_cast<std::uint64_t>(kMult1) * c[2];
  return {static_cast<std::uint32_t>(p1 >> 32) ^ c[1] ^ k0,
          static_cast<std::uint32_t>(p1),
          static_cast<std::uint32_t>(p0 >> 32) ^ c[3] ^ k1,
          static_cast<std::uint32_t>(p0)};
}

}  // namespace

Philox4x32::Block Philox4x32::block(std::uint64_t stream,
                                    std::uint64_t counter) const {
  Block c = {static_cast<std::uint32_t>(counter),
             static_cast<std::uint32_t>(counter >> 32),
             static_cast<std::uint32_t>(stream),
             static_cast<std::uint32_t>(stream >> 32)};
  std::uint32_t k0 = key0_, k1 = key1_;
  for (int r = 0; r < 10; ++r) {
    c = philox_round(c, k0, k1);
    k0 += kWeyl0;
    k1 += kWeyl1;
  }
  return c;
}

std::uint64_t RandomStream::next_u64() {
  if (pos_ >= 2) {
    current_ = gen_.block(stream_, block_index_++);
    pos_ = 0;
  }
  const int base = pos_ * 2;
  ++pos_;
  return static_cast<std::uint64_t>(current_[base]) |
         (static_cast<std::uint64_t>(current_[base + 1]) << 32);
}

double RandomStream::uniform01() {
  // 53 significant bits, offset half an ulp so 0 and 1 are unreachable.
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53 + 0x1.0p-54;
}

double RandomStream::gaussian() { return inverse_normal_cdf(uniform01()); }

double inverse_normal_cdf(double p) {
  if (!(p > 0.0 && p < 1.0))
    throw DomainError("inverse_normal_cdf: p must lie in (0,1)");

  static const double a[8] = {
      3.3871328727963666080e0,  1.3314166789178437745e2,
      1.9715909503065514427e3,  1.3731693765509461125e4,
      4.5921953931549871457e4,  6.7265770927008700853e4,
      3.3430575583588128105e4,  2.5090809287301226727e3};
  static const double b[8] = {
      1.0,                      4.2313330701600911252e1,
      6.8718700749205790830e2,  5.3941960214247511077e3,
      2.1213794301586595867e4,  3.9307895800092710610e4,
      2.8729085735721942674e4,  5.2264952788528545610e3};
  static const double c[8] = {
      1.42343711074968357734e0, 4.63033784615654529590e0,
      5.76949722146069140550e0, 3.64784832476320460504e0,
      1.27045825245236838258e0, 2.41780725177450611770e-1,
      2.27238449892691845833e-2, 7.74545014278341407640e-4};
  static const double d[8] = {
      1.0,                      2.05319162663775882187e0,
      1.67638483018380384940e0, 6.89767334985100004550e-1,
      1.48103976427480074590e-1, 1.51986665636164571966e-2,
      5.47593808499534494600e-4, 1.05075007164441684324e-9};
  static const double e[8] = {
      6.65790464350110377720e0, 5.46378491116411436990e0,
      1.78482653991729133580e0, 2.96560571828504891230e-1,
      2.65321895265761230930e-2, 1.24266094738807843860e-3,
      2.71155556874348757815e-5, 2.01033439929228813265e-7};
  static const double f[8] = {
      1.0,                      5.99832206555887937690e-1,
      1.36929880922735805310e-1, 1.48753612908506148525e-2,
      7.86869131145613259100e-4, 1.84631831751005468180e-5,
      1.42151175831644588870e-7, 2.04426310338993978564e-15};

  auto poly = [](const double* k, double x) {
    return ((((((k[7] * x + k[6]) * x + k[5]) * x + k[4]) * x + k[3]) * x +
             k[2]) * x + k[1]) * x + k[0];
  };

  const double q = p - 0.5;
  if (std::abs(q) <= 0.425) {
    const double r = 0.180625 - q * q;
    return q * poly(a, r) / poly(b, r);
  }
  double r = q < 0.0 ? p : 1.0 - p;
  r = std::sqrt(-std::log(r));
  double x;
  if (r <= 5.0) {
    r -= 1.6;
    x = poly(c, r) / poly(d, r);
  } else {
    r -= 5.0;
    x = poly(e, r) / poly(f, r);
  }
  return q < 0.0 ? -x : x;
}

}  // namespace ordlab
