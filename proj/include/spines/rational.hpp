#pragma once

#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace spines {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

/// "p/q" (or "p" for integers).
std::string to_string(const Rational& r);
double to_double(const Rational& r);
/// Parses "p/q", "p", or a finite decimal such as "0.25".
Rational parse_rational(const std::string& text);

/// r <= bound + slack, compared exactly against the binary value of the double.
bool rational_le_real(const Rational& r, double bound, double slack = 1e-12);

}  // namespace spines
