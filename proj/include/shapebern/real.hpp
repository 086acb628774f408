// High-precision floating point (50 significant digits, MPFR-backed) and
// directed-rounding building blocks for guaranteed enclosures.

#pragma once

#include <boost/multiprecision/mpfr.hpp>

#include "shapebern/rational.hpp"

namespace shapebern {

using Real = boost::multiprecision::mpfr_float_50;

Real to_real(const Rational& q);

// Guaranteed enclosure of ln(q) with outward rounding at the given
// precision. Requires q > 0. Bounds are exact dyadic rationals.
Enclosure log_enclosure(const Rational& q, unsigned bits);

}  // namespace shapebern
