#pragma once

#include <cstdio>
#include <string>

namespace cavqed {

/// Output float format: 9 significant digits, scientific. Negative zero is
/// written as zero so byte-identical files do not depend on sign noise.
inline std::string fmt(double v) {
  if (v == 0.0) v = 0.0;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.8e", v);
  return buf;
}

/// Round-trip format (17 significant digits) for values that are read back.
inline std::string fmt_exact(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace cavqed
