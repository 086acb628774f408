// Exact arithmetic core: arbitrary-precision integers and rationals,
// binomial coefficients, floor/nearest rounding, and rational enclosures
// for values that cannot be represented exactly.
//
// Everything here is value-semantic and immutable after construction, so
// all of it is safe to share across threads.

#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace shapebern {

using Integer = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

// num/den with canonicalization; throws std::domain_error on zero denominator.
Rational make_rational(Integer num, Integer den);

bool is_integer(const Rational& q);

// q^e for nonnegative integer exponents (0^0 = 1).
Rational rational_pow(const Rational& base, unsigned exp);

// C(n,k), exact. Throws std::domain_error unless 0 <= k <= n.
Integer binomial(long n, long k);

// The full row C(n,0..n).
std::vector<Integer> binomial_row(long n);

enum class RoundKind { Floor, Nearest };

// Tie handling for Nearest:
//   HalfUp   -> ties toward +infinity
//   HalfDown -> ties toward -infinity
//   HalfEven -> ties to the even neighbour
enum class TiePolicy { HalfUp, HalfDown, HalfEven };

struct RoundingMode {
  RoundKind kind = RoundKind::Floor;
  TiePolicy tie = TiePolicy::HalfUp;  // ignored when kind == Floor

  static RoundingMode floor() { return {RoundKind::Floor, TiePolicy::HalfUp}; }
  static RoundingMode nearest(TiePolicy tie = TiePolicy::HalfUp) {
    return {RoundKind::Nearest, tie};
  }
};

// Largest integer <= q.
Integer floor_to_int(const Rational& q);

// Floor: largest integer <= q. Nearest: minimizer of |q - m|, ties per policy.
Integer round_rational(const Rational& q, const RoundingMode& mode);

constexpr unsigned kDefaultPrecisionCap = 4096;

// A closed rational interval known to contain some (possibly irrational)
// value, together with the precision it was computed at. Refining never
// widens the interval.
struct Enclosure {
  Rational lower;
  Rational upper;
  unsigned precision_bits = 1;

  Enclosure() = default;
  Enclosure(Rational lo, Rational hi, unsigned bits);

  bool is_point() const { return lower == upper; }
  Rational width() const { return upper - lower; }
};

// Re-evaluates the enclosed value at (at least) the requested precision.
using EnclosureFn = std::function<Enclosure(unsigned bits)>;

// Rounds the enclosed value, refining until every rational in the interval
// rounds to the same integer. Returns nullopt (Undecidable) if the interval
// still straddles a rounding boundary once precision_cap is reached or no
// refinement is available.
std::optional<Integer> round_enclosure(Enclosure e, const RoundingMode& mode,
                                       const EnclosureFn& refine = {},
                                       unsigned precision_cap = kDefaultPrecisionCap);

// Exact square root if q is the square of a rational.
std::optional<Rational> exact_sqrt(const Rational& q);

// Enclosure of sqrt(q) with width <= 2^-bits, computed with integer
// square roots only. Requires q >= 0. Exact values give point enclosures.
Enclosure sqrt_enclosure(const Rational& q, unsigned bits);

// Text format: "p/q" or "p" with optional sign, or an exact decimal such
// as "0.95". Throws std::invalid_argument on malformed input.
Rational parse_rational(std::string_view text);

// Lowest-terms "p/q", or "p" when the denominator is 1.
std::string to_string(const Rational& q);

}  // namespace shapebern
