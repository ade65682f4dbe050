#include "uavsim/fmt.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>

namespace uavsim {

std::string fmt6(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string fmt_full(double v) {
  char buf[40];
  // %g would render whole numbers like 400 as 4e+02 at low precision
  if (v == std::floor(v) && std::fabs(v) < 1e15) {
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
  }
  for (int prec = 1; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof buf, "%.*g", prec, v);
    if (std::strtod(buf, nullptr) == v) break;
  }
  return buf;
}

} // namespace uavsim
