#pragma once

#include <cstdio>
#include <string>

namespace ordlab {

// 17 significant digits, '.' decimal point, no grouping: round-trip exact
// for doubles.
inline std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace ordlab
