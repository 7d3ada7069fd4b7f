#pragma once

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <string_view>

namespace heis {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;
// 50 decimal digits, ~166-bit mantissa.
using HighFloat = boost::multiprecision::cpp_bin_float_50;

// Accepts "12", "-7/2", "0.25", "1.5e-3". Decimal input is converted exactly.
Rational parse_rational(std::string_view text);

// Every finite double is a dyadic rational; this returns it exactly.
Rational rational_from_double(double x);

std::string to_string(const Rational& r);
double to_double(const Rational& r);
HighFloat to_high(const Rational& r);

BigInt floor_of(const Rational& r);
BigInt ceil_of(const Rational& r);
Rational pow_int(const Rational& r, unsigned e);

// Largest m with m^k <= x, for x >= 0.
BigInt integer_root_floor(const BigInt& x, unsigned k);

} // namespace heis
