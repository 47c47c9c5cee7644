#pragma once

#include <string>

namespace gaugequad {

// Shortest decimal text that parses back to exactly `v`.
std::string format_double(double v);

}  // namespace gaugequad
