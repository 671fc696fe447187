#include "kopa/csv.hpp"

#include <cstdio>

namespace kopa {

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace kopa
