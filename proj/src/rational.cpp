#include "shapebern/rational.hpp"

#include <algorithm>
#include <cctype>
#include <vector>

namespace shapebern {

Rational make_rational(Integer num, Integer den) {
  if (den == 0) throw std::domain_error("make_rational: zero denominator");
  Rational r(std::move(num));
  r /= Rational(std::move(den));
  return r;
}

bool is_integer(const Rational& q) { return denominator(q) == 1; }

Rational rational_pow(const Rational& base, unsigned exp) {
  Rational result(1);
  Rational b = base;
  unsigned e = exp;
  while (e > 0) {
    if (e & 1u) result *= b;
    e >>= 1u;
    if (e > 0) b *= b;
  }
  return result;
}

Integer binomial(long n, long k) {
  if (n < 0 || k < 0 || k > n) throw std::domain_error("binomial: need 0 <= k <= n");
  Integer c;
  mpz_bin_uiui(c.backend().data(), static_cast<unsigned long>(n),
               static_cast<unsigned long>(k));
  return c;
}

std::vector<Integer> binomial_row(long n) {
  if (n < 0) throw std::domain_error("binomial_row: negative n");
  std::vector<Integer> row(static_cast<size_t>(n) + 1);
  row[0] = 1;
  for (long k = 1; k <= n; ++k) {
    // C(n,k) = C(n,k-1) * (n-k+1) / k, exact at every step
    row[static_cast<size_t>(k)] = row[static_cast<size_t>(k - 1)] * (n - k + 1) / k;
  }
  return row;
}

Integer floor_to_int(const Rational& q) {
  Integer f;
  mpz_fdiv_q(f.backend().data(), numerator(q).backend().data(),
             denominator(q).backend().data());
  return f;
}

Integer round_rational(const Rational& q, const RoundingMode& mode) {
  Integer f = floor_to_int(q);
  if (mode.kind == RoundKind::Floor) return f;
  // Compare the fractional part against 1/2: 2*(num - f*den) vs den.
  Integer rem = numerator(q) - f * denominator(q);
  rem *= 2;
  int cmp = rem.compare(denominator(q));
  if (cmp < 0) return f;
  if (cmp > 0) return f + 1;
  switch (mode.tie) {
    case TiePolicy::HalfUp:
      return f + 1;
    case TiePolicy::HalfDown:
      return f;
    case TiePolicy::HalfEven:
      return (f % 2 == 0) ? f : f + 1;
  }
  throw std::logic_error("round_rational: bad tie policy");
}

Enclosure::Enclosure(Rational lo, Rational hi, unsigned bits)
    : lower(std::move(lo)), upper(std::move(hi)), precision_bits(bits) {
  if (lower > upper) throw std::invalid_argument("Enclosure: lower > upper");
  if (precision_bits == 0) throw std::invalid_argument("Enclosure: zero precision");
}

std::optional<Integer> round_enclosure(Enclosure e, const RoundingMode& mode,
                                       const EnclosureFn& refine,
                                       unsigned precision_cap) {
  for (;;) {
    Integer lo = round_rational(e.lower, mode);
    Integer hi = round_rational(e.upper, mode);
    if (lo == hi) return lo;  // rounding is monotone, so the whole interval agrees
    if (!refine || e.precision_bits >= precision_cap) return std::nullopt;
    unsigned next = std::min(precision_cap, std::max(64u, e.precision_bits * 2));
    Enclosure tightened = refine(next);
    if (tightened.precision_bits <= e.precision_bits) return std::nullopt;
    e = std::move(tightened);
  }
}

std::optional<Rational> exact_sqrt(const Rational& q) {
  if (q < 0) return std::nullopt;
  const Integer& num = numerator(q);
  const Integer& den = denominator(q);
  if (mpz_perfect_square_p(num.backend().data()) == 0) return std::nullopt;
  if (mpz_perfect_square_p(den.backend().data()) == 0) return std::nullopt;
  Integer sn, sd;
  mpz_sqrt(sn.backend().data(), num.backend().data());
  mpz_sqrt(sd.backend().data(), den.backend().data());
  return make_rational(std::move(sn), std::move(sd));
}

Enclosure sqrt_enclosure(const Rational& q, unsigned bits) {
  if (q < 0) throw std::domain_error("sqrt_enclosure: negative argument");
  if (bits == 0) bits = 1;
  if (auto exact = exact_sqrt(q)) return Enclosure(*exact, *exact, bits);
  // sqrt(p/d) = sqrt(p*d)/d; bracket sqrt(p*d) between consecutive
  // multiples of 2^-bits using the integer square root.
  const Integer& p = numerator(q);
  const Integer& d = denominator(q);
  Integer scaled = p * d;
  scaled <<= 2 * bits;
  Integer s = sqrt(scaled);  // floor of the square root
  Integer shifted_den = d << bits;
  return Enclosure(make_rational(s, shifted_den), make_rational(s + 1, shifted_den), bits);
}

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  return std::all_of(s.begin(), s.end(),
                     [](unsigned char c) { return std::isdigit(c) != 0; });
}

Integer parse_digits(std::string_view s) {
  Integer v = 0;
  for (char c : s) {
    v *= 10;
    v += (c - '0');
  }
  return v;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string s;
  s.reserve(text.size());
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  }
  // Normalize the U+2212 minus sign.
  for (size_t pos = 0; (pos = s.find("\xe2\x88\x92", pos)) != std::string::npos;) {
    s.replace(pos, 3, "-");
  }
  if (s.empty()) throw std::invalid_argument("parse_rational: empty input");

  bool negative = false;
  size_t i = 0;
  if (s[0] == '+' || s[0] == '-') {
    negative = (s[0] == '-');
    i = 1;
  }
  std::string_view body(s.data() + i, s.size() - i);
  if (body.empty()) throw std::invalid_argument("parse_rational: missing digits");

  Rational value;
  if (size_t slash = body.find('/'); slash != std::string_view::npos) {
    std::string_view num = body.substr(0, slash);
    std::string_view den = body.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den))
      throw std::invalid_argument("parse_rational: malformed fraction '" + s + "'");
    Integer d = parse_digits(den);
    if (d == 0) throw std::invalid_argument("parse_rational: zero denominator");
    value = make_rational(parse_digits(num), std::move(d));
  } else if (size_t dot = body.find('.'); dot != std::string_view::npos) {
    std::string_view whole = body.substr(0, dot);
    std::string_view frac = body.substr(dot + 1);
    if (whole.empty() && frac.empty())
      throw std::invalid_argument("parse_rational: malformed decimal '" + s + "'");
    if ((!whole.empty() && !all_digits(whole)) || (!frac.empty() && !all_digits(frac)))
      throw std::invalid_argument("parse_rational: malformed decimal '" + s + "'");
    Integer num = whole.empty() ? Integer(0) : parse_digits(whole);
    Integer den = 1;
    for (size_t j = 0; j < frac.size(); ++j) {
      num *= 10;
      den *= 10;
    }
    if (!frac.empty()) num += parse_digits(frac);
    value = make_rational(std::move(num), std::move(den));
  } else {
    if (!all_digits(body))
      throw std::invalid_argument("parse_rational: malformed number '" + s + "'");
    value = Rational(parse_digits(body));
  }
  if (negative) value = -value;
  return value;
}

std::string to_string(const Rational& q) {
  std::string s = numerator(q).str();
  if (denominator(q) != 1) {
    s += '/';
    s += denominator(q).str();
  }
  return s;
}

}  // namespace shapebern
