#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "ordlab/grid_path.hpp"

namespace ordlab {

// Discrete quadratic variation at mesh 1/m:
//   Q_m = sqrt( (1/m) * sum_i [w(i/m) - w((i-1)/m)]^2 ).
// m must divide path.n (the path is subsampled at stride path.n/m).
double quadratic_variation(const GridPath& path, std::size_t m);

struct OreyEstimate {
  double q_minus;  // min over the tail window of the ratios
  double q_plus;   // max over the tail window
  std::vector<std::pair<std::size_t, double>> ratios;  // (m, -log Q_m / log m)
};

// Finite bracket [q_minus, q_plus] for the Orey exponent along m_list
// (strictly increasing divisors of path.n, all >= 2). Natural logs; the base
// cancels. tail_window == 0 selects the last half of m_list. A vanishing Q_m
// aborts with a DomainError naming the offending m: downstream bounds divide
// by Q_m, so +inf ratios are never produced.
OreyEstimate orey_exponents(const GridPath& path,
                            std::span<const std::size_t> m_list,
                            std::size_t tail_window = 0);

enum class HolderMode {
  exact,                 // max over all O(n^2) grid pairs
  adjacent_upper_bound,  // O(n log n) bound chaining dyadic gaps; an upper
                         // bound of the exact value, never smaller
};

// beta-Holder modulus restricted to grid pairs:
//   max_{j != k} |w(j/n) - w(k/n)| / |j/n - k/n|^beta.
double holder_seminorm(const GridPath& path, double beta,
                       HolderMode mode = HolderMode::exact);

struct ChordDeviation {
  double value = 0.0;
  bool no_interior = false;  // m == path.n: chords through adjacent points
};

// Maximal gap between the path and its piecewise-affine interpolation on the
// mesh-1/m grid, evaluated at the interior grid points of the path.
ChordDeviation chord_deviation(const GridPath& path, std::size_t m);

// Dyadic m-list {2, 4, ..., n} (n must be a power of two).
std::vector<std::size_t> dyadic_divisors(std::size_t n);

}  // namespace ordlab
