#pragma once

#include <boost/rational.hpp>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace gos {

/// Exact rational scalar used for all volume / Euler bookkeeping.
using Rat = boost::rational<long long>;

/// Formats as "p/q", or "p" when the denominator is 1.
inline std::string to_string(const Rat& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

/// Parses "p" or "p/q". Throws std::invalid_argument on malformed input.
inline Rat parse_rational(const std::string& s) {
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rat(std::stoll(s));
    long long num = std::stoll(s.substr(0, slash));
    long long den = std::stoll(s.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator");
    return Rat(num, den);
  } catch (const std::out_of_range&) {
    throw std::invalid_argument("rational out of range: " + s);
  }
}

}  // namespace gos
