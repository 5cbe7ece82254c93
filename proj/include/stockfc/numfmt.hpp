#pragma once

#include <string>

namespace stockfc {

/// Shortest decimal text that parses back to exactly `value`.
std::string format_shortest(double value);

/// Decimal text with `digits` significant digits (general notation).
std::string format_significant(double value, int digits);

} // namespace stockfc
