#include "he6/angles.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <stdexcept>

namespace he6 {

double parse_angle(const std::string& text) {
  std::string s;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  }
  if (s.empty()) throw std::invalid_argument("empty angle");

  const size_t pi_pos = s.find("pi");
  if (pi_pos == std::string::npos) {
    size_t used = 0;
    const double value = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument("cannot parse angle '" + text + "'");
    return value;
  }

  // [coefficient] "pi" ["/" divisor]
  double coeff = 1.0;
  std::string head = s.substr(0, pi_pos);
  if (head == "-") {
    coeff = -1.0;
  } else if (head == "+" || head.empty()) {
    coeff = 1.0;
  } else {
    size_t used = 0;
    coeff = std::stod(head, &used);
    if (used != head.size()) throw std::invalid_argument("cannot parse angle '" + text + "'");
  }

  double divisor = 1.0;
  std::string tail = s.substr(pi_pos + 2);
  if (!tail.empty()) {
    if (tail[0] != '/') throw std::invalid_argument("cannot parse angle '" + text + "'");
    tail = tail.substr(1);
    size_t used = 0;
    divisor = std::stod(tail, &used);
    if (used != tail.size() || divisor == 0.0) {
      throw std::invalid_argument("cannot parse angle '" + text + "'");
    }
  }
  return coeff * std::numbers::pi / divisor;
}

std::string format_angle(double radians) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.12g", radians);
  return buf;
}

}  // namespace he6
