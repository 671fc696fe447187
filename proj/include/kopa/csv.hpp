#pragma once

#include <string>

namespace kopa {

// Shortest round-trip-exact decimal form (17 significant digits), `.`
// decimal point, usable in CSV cells.
std::string fmt17(double v);

}  // namespace kopa
