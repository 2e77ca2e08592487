#include "ordlab/local_scale.hpp"

#include <algorithm>
#include <cmath>

#include "ordlab/errors.hpp"

namespace ordlab {

namespace {

double iterated_log(double x, int k) {
  for (int i = 0; i < k; ++i) x = std::log(x);
  return x;
}

}  // namespace

LocalScaleEstimate local_scale_estimate(std::span<const LocalScaleSample> samples,
                                        int p, int q,
                                        std::size_t tail_window) {
  if (p < 1 || q < 1) throw DomainError("local_scale_estimate: p, q >= 1");
  if (samples.size() < 4)
    throw DomainError("local_scale_estimate: need >= 4 samples");
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const auto& s = samples[i];
    if (!(s.epsilon > 0.0 && s.epsilon < 1.0))
      throw DomainError("local_scale_estimate: epsilon must lie in (0,1)");
    if (s.log_measure > 0.0)
      throw DomainError("local_scale_estimate: log_measure must be <= 0");
    if (i > 0 && !(s.epsilon < samples[i - 1].epsilon))
      throw DomainError(
          "local_scale_estimate: epsilons must be strictly decreasing");
  }

  LocalScaleEstimate est;
  est.per_sample_ratios.reserve(samples.size());
  for (const auto& s : samples) {
    if (s.log_measure == 0.0) {  // full mass: ratio undefined, skip
      ++est.skipped;
      continue;
    }
    const double num = iterated_log(-s.log_measure, p - 1);
    const double den = iterated_log(1.0 / s.epsilon, q);
    const double ratio = num / den;
    if (!std::isfinite(ratio)) {
      ++est.skipped;
      continue;
    }
    est.per_sample_ratios.push_back(ratio);
  }
  if (est.per_sample_ratios.empty())
    throw DomainError("local_scale_estimate: no usable samples");

  const std::size_t count = est.per_sample_ratios.size();
  std::size_t window = tail_window == 0 ? (count + 1) / 2 : tail_window;
  window = std::min(window, count);
  const auto tail_begin = est.per_sample_ratios.end() - window;
  est.lower = *std::min_element(tail_begin, est.per_sample_ratios.end());
  est.upper = *std::max_element(tail_begin, est.per_sample_ratios.end());
  return est;
}

}  // namespace ordlab
