#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace turan {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

// Parses a plain decimal literal ("0.784", "2.89", "17") into an exact
// rational. Scientific notation is not accepted; these values come from
// config files and command lines where exactness matters.
Rat rat_from_decimal(const std::string& s);

// Exact value of a finite double (every finite double is a dyadic rational).
Rat rat_from_double(double x);

double rat_to_double(const Rat& q);

// floor(q) for any rational, exact.
Int rat_floor(const Rat& q);

// q^e for integer e >= 0, exact.
Rat rat_pow(const Rat& q, unsigned e);

// Decimal rendering of q with the given number of fractional digits
// (round toward zero). Used for display only.
std::string rat_to_decimal(const Rat& q, int digits);

}  // namespace turan
