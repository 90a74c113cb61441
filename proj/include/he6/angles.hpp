#pragma once

#include <string>

namespace he6 {

// Parses an angle in radians. Accepts plain decimals ("1.5708", "-0.25") and
// pi literals ("pi", "3pi/2", "-pi/4", "0.5pi") so documented angles stay
// exact.
double parse_angle(const std::string& text);

std::string format_angle(double radians);

}  // namespace he6
