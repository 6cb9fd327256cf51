#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <string>

namespace speq {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

Rational make_ratio(std::int64_t num, std::int64_t den);

double to_double(const Rational& r);

// Accepts "a/b", plain integers, and decimal strings ("0.25", "-1.5e-3").
Rational parse_rational(const std::string& text);

// Inverse of parse_rational: "a" when the denominator is 1, else "a/b".
std::string format_rational(const Rational& r);

// %.17g — round-trips every finite double.
std::string format_double(double x);

// Smallest integer >= r. r must be finite (always true for Rational).
BigInt ceil_rational(const Rational& r);

}  // namespace speq
