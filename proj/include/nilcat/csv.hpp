#pragma once

#include <cstdio>
#include <string>

namespace nilcat::csv {

// Round-trip safe, locale independent and identical across runs.
inline std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace nilcat::csv
