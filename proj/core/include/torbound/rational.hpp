#pragma once

#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace torbound {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Parses a nonnegative decimal literal ("0.25", "3", "1e-3") into an exact
// rational. Throws std::invalid_argument on malformed input.
Rational parse_decimal(std::string_view text);

// "num/den" in lowest terms; integers render without the "/1".
std::string rational_to_string(const Rational& r);

// Inverse of rational_to_string (also accepts plain decimals).
Rational rational_from_string(std::string_view text);

}  // namespace torbound
