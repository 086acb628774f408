// Correction functions whose grid increments dominate the reciprocal
// binomial rounding losses of the integer Bernstein operators, exact on
// their grids, plus the vanishing envelopes used for asymptotic shape
// preservation and the entropy function evaluated through enclosures.

#pragma once

#include <vector>

#include "shapebern/rational.hpp"

namespace shapebern {

enum class CorrectionKind {
  PhiInc,          // increasing-monotonicity correction for the floor operator
  PsiDec,          // decreasing-monotonicity correction for the floor operator
  TildeVarphi,     // monotonicity correction for the nearest-integer operator
  VarphiCombined,  // 2 * TildeVarphi: covers floor and nearest simultaneously
  PhiEntropy,      // 6(x ln x + (1-x) ln(1-x)); no exact grid, see entropy_phi
  PhiConvexN,      // convexity correction, grid second differences
                   // 1/C(n,k) + 1/C(n,k+2)
};

const char* to_string(CorrectionKind kind);
CorrectionKind correction_kind_from_string(std::string_view name);

// Exact values of a correction function at k/n on its valid index range.
class CorrectionTable {
 public:
  CorrectionTable(CorrectionKind kind, int n, int k_min, std::vector<Rational> entries);

  CorrectionKind kind() const { return kind_; }
  int n() const { return n_; }
  int k_min() const { return k_min_; }
  int k_max() const { return k_min_ + static_cast<int>(entries_.size()) - 1; }
  const Rational& at(int k) const;
  // increment at(k+1) - at(k); both indices must be in range
  Rational increment(int k) const { return at(k + 1) - at(k); }
  Rational second_difference(int k) const { return at(k + 2) - 2 * at(k + 1) + at(k); }

 private:
  CorrectionKind kind_;
  int n_;
  int k_min_;
  std::vector<Rational> entries_;
};

// Exact table built from the defining difference identities and anchors.
// Ranges: PhiInc k=0..n-1, PsiDec k=1..n, TildeVarphi/VarphiCombined
// k=1..n-1, PhiConvexN k=0..n. Requires n >= 3. PhiEntropy has no exact
// table and raises a domain error.
CorrectionTable correction_grid(CorrectionKind kind, int n);

enum class EnvelopeKind {
  EpsilonMonotone,  // n >= 2
  EpsilonConvex,    // n >= 6
  EtaMonotone,      // reflection of EpsilonMonotone
  EtaConvex,        // reflection of EpsilonConvex
};

const char* to_string(EnvelopeKind kind);
EnvelopeKind envelope_kind_from_string(std::string_view name);

// Exact value of the envelope polynomial at x.
Rational envelope(EnvelopeKind kind, int n, const Rational& x);

// The envelope as exact power basis coefficients (degree n).
std::vector<Rational> envelope_power_coeffs(EnvelopeKind kind, int n);

// Guaranteed enclosure of 6(x ln x + (1-x) ln(1-x)) on [0,1]; exactly 0 at
// the endpoints (limit values).
Enclosure entropy_phi(const Rational& x, unsigned bits);

// Enclosure of the entropy grid second difference
// Phi((k+2)/n) - 2 Phi((k+1)/n) + Phi(k/n).
Enclosure entropy_grid_second_difference(int n, int k, unsigned bits);

}  // namespace shapebern
