#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace ordlab {

// log N(eps) for the discrete eps-net of the alpha-Holder unit ball:
// functions on the grid of step delta = eps^{1/alpha}, values quantized to
// eps*Z inside [-1,1], starting at 0, each increment bounded by eps in
// absolute value. Counted by dynamic programming over (grid position,
// quantized level), counts carried in log-domain.
double holder_ball_log_covering(double alpha, double epsilon);

struct SpectrumPoint {
  double xi = 0.0;
  double f_theory = 0.0;  // 1 + xi/2 for xi >= 2, -inf sentinel below
  std::optional<double> f_estimate;
  std::string components;  // provenance of the estimate
};

struct ExperimentConfig {
  std::vector<double> hurst_grid;
  std::size_t n_max = 65536;  // fBm simulation depth; a power of two
  std::vector<std::uint64_t> seeds;
  std::vector<double> beta_offsets = {0.02};  // beta = max(q_minus - off, 0.05)
  std::size_t cylinder_n_min = 256;           // dyadic cylinder depths
  std::size_t cylinder_n_max = 2048;
  std::size_t nodes = 128;  // quadrature nodes per slab
  int threads = 0;
  std::string out_dir;  // optional; CSV/JSON written when non-empty

  void validate() const;
  static ExperimentConfig from_json_file(const std::string& file);
  static ExperimentConfig from_json_text(const std::string& text);
};

struct ExperimentRow {
  double hurst = 0.0;
  std::uint64_t seed = 0;
  double beta_offset = 0.0;
  double beta = 0.0;
  std::size_t n = 0;
  double epsilon = 0.0;
  double ratio = 0.0;
};

struct ExperimentCell {
  double hurst = 0.0;
  std::uint64_t seed = 0;
  double beta_offset = 0.0;
  double q_minus = 0.0, q_plus = 0.0;
  double beta = 0.0;
  double tail_ratio = 0.0;  // median over the tail half of the ratio list
  bool degenerate = false;  // Q_m vanished; excluded from the summary
};

struct ExperimentSummary {
  double hurst = 0.0;
  double beta_offset = 0.0;
  double theory = 0.0;  // max(2, 2(1/H - 1))
  double median_tail_ratio = 0.0;
  std::size_t runs = 0;
  std::size_t excluded = 0;
};

struct ExperimentResult {
  std::vector<ExperimentRow> rows;
  std::vector<ExperimentCell> cells;
  std::vector<ExperimentSummary> summaries;
};

// Local order of the Wiener measure at fBm centers: per (H, seed, offset)
// simulate, bracket the Orey exponent on the dyadic tail, aim the cylinder
// radius exponent just below the estimated q_minus and record the ratio
// statistics against the theory max(2, 2(1/H - 1)). Cells whose quadratic
// variation degenerates are excluded with a count. When out_dir is set,
// writes ratios.csv (tidy rows), summary.json, and nothing else.
ExperimentResult fbm_local_order_experiment(const ExperimentConfig& config);

double local_order_theory(double hurst);  // max(2, 2(1/H - 1))

// Theory side of the spectrum: f(xi) = 1 + xi/2 for xi >= 2 and the -inf
// sentinel on (0, 2). Estimates attach to points whose xi = 2(1/H - 1)
// matches an experiment summary (H = 2/(xi+2)).
std::vector<SpectrumPoint> spectrum_table(std::span<const double> xi_grid);
std::vector<SpectrumPoint> spectrum_table(
    std::span<const double> xi_grid,
    std::span<const ExperimentSummary> summaries);

// Median of a copied, sorted list (midpoint average for even sizes).
double median(std::vector<double> values);

}  // namespace ordlab
