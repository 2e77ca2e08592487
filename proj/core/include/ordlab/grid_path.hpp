#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

namespace ordlab {

// A trajectory sampled on the uniform grid {j/n}, j = 0..n. Paths start at
// 0 by convention of the ambient space.
struct GridPath {
  std::size_t n = 0;          // number of subintervals
  std::vector<double> values;  // n+1 entries, values[0] == 0

  static GridPath zeros(std::size_t n);

  double t(std::size_t j) const { return static_cast<double>(j) / n; }

  // Keeps every (n/m)-th value; m must divide n.
  GridPath subsample(std::size_t m) const;

  void validate() const;  // throws DomainError on a malformed path
};

// CSV: header "t,value", one row per grid point, 17 significant digits.
void write_path_csv(const GridPath& path, std::ostream& out);
void write_path_csv(const GridPath& path, const std::string& file);
GridPath read_path_csv(std::istream& in);
GridPath read_path_csv(const std::string& file);

// Binary column format: u64 n, then n+1 f64 values, all little-endian.
void write_path_binary(const GridPath& path, const std::string& file);
GridPath read_path_binary(const std::string& file);

// Dispatch on extension: ".bin" binary, anything else CSV.
GridPath read_path_auto(const std::string& file);

}  // namespace ordlab
