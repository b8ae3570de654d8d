#pragma once

#include <string>

namespace cavlink::cli {

// Fixed notation, 8 fractional digits, '.' separator, never "-0.00000000".
// Used for CSV data streams.
std::string format_fixed(double x);

// Shortest of fixed/scientific at 9 significant digits. Used for reports.
std::string format_general(double x);

}  // namespace cavlink::cli
