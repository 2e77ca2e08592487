#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace ordlab {

struct LocalScaleSample {
  double epsilon;      // ball radius, in (0,1)
  double log_measure;  // log mu(B(x,eps)), <= 0
};

struct LocalScaleEstimate {
  double lower;  // min over the tail window of per_sample_ratios
  double upper;  // max over the tail window
  std::vector<double> per_sample_ratios;
  std::size_t skipped = 0;  // full-mass or otherwise undefined samples
};

// Finite-data stand-in for the liminf/limsup local-scale ratios of the
// scl^{p,q} family:
//   ratio_k = log^{(p-1)}(-log_measure_k) / log^{(q)}(1/eps_k).
// lower/upper take min/max over the last tail_window ratios; tail_window == 0
// selects half of the usable samples (rounded up). The limits are asymptotic,
// so the window is the caller's choice, not a fixed rule.
LocalScaleEstimate local_scale_estimate(std::span<const LocalScaleSample> samples,
                                        int p, int q,
                                        std::size_t tail_window = 0);

}  // namespace ordlab
