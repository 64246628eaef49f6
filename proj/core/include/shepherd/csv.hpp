#pragma once

#include <string>

namespace shepherd {

/// Shortest decimal that round-trips to `v`, with a '.' always present for
/// finite non-exponent values ("1000.0", "0.5", "43.088693800637678").
/// Locale independent. NaN and infinities print as "nan", "inf", "-inf".
std::string format_number(double v);

}  // namespace shepherd
