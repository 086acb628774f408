// Shape certification for Bernstein-form polynomials: sufficient
// coefficient tests, sound certify/refute via exact midpoint subdivision,
// and the grid-level hypothesis checks behind each sufficient-condition
// result for the integer operators.

#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "shapebern/bernstein.hpp"
#include "shapebern/rational.hpp"

namespace shapebern {

enum class ShapeQuery { MonotoneIncreasing, MonotoneDecreasing, Convex, Concave };

const char* to_string(ShapeQuery q);
ShapeQuery shape_query_from_string(std::string_view name);

struct Certificate {
  enum class Status { CertifiedByCoefficients, CertifiedBySubdivision, Refuted, Unknown };

  Status status = Status::Unknown;
  std::optional<ShapeQuery> query;  // absent for raw nonnegativity certificates
  // Subdivision depth used; for Unknown this is the exhausted cap.
  int depth = 0;
  // Refuted only: an exact point with a strictly sign-violating exact value.
  std::optional<Rational> witness_x;
  std::optional<Rational> witness_value;

  bool certified() const {
    return status == Status::CertifiedByCoefficients ||
           status == Status::CertifiedBySubdivision;
  }
};

const char* to_string(Certificate::Status s);

// Sign test on first differences (monotone queries, degree >= 1) or second
// differences (convexity queries, degree >= 2). True is a sufficient
// certificate; false alone is inconclusive.
bool coefficient_shape_test(const BernsteinPoly& p, ShapeQuery q);

// Certifies p >= 0 on [0,1] by midpoint subdivision, or refutes it with an
// exact witness. Search order: the two endpoints, then the dyadic midpoints
// encountered while subdividing, depth-first left to right.
Certificate certify_nonnegative(const BernsteinPoly& p, int depth_cap = 40);

// Builds the first (monotone) or second (convexity) derivative, negates it
// for the decreasing/concave queries, and delegates to certify_nonnegative.
Certificate certify_shape(const BernsteinPoly& p, ShapeQuery q, int depth_cap = 40);

// Grid inequality families consumed by the sufficient-condition results.
// The *_a ids are the increasing/convex variants, *_b their duals.
enum class HypothesisId {
  Thm1m_a,            // f increments >= 1/n everywhere
  Thm1m_b,            // f increments <= -1/n everywhere
  Thm3m_a,            // boundary increments >= 0, interior >= combined correction increments
  Thm3m_b,
  PropPhiInc,         // boundary >= 0, interior increments >= 1/C(n,k+1)
  PropPsiDec,         // boundary <= 0, interior increments <= -1/C(n,k)
  PropTildeVarphi_a,  // boundary >= 0, interior >= (1/C(n,k)+1/C(n,k+1))/2
  PropTildeVarphi_b,
  Thm1c_a,            // second differences >= entropy grid second differences
  Thm1c_b,
  Thm3c_a,            // second differences >= 1/C(n,k) + 1/C(n,k+2)
  Thm3c_b,
  PropConvexFloor,    // 1/C(n,2) | 1/C(n,k)+1/C(n,k+2) | 1/C(n,n-2)
  PropConcaveFloor,   // second differences <= -2/C(n,k+1)
  PropConvexNearest,  // halved three-term margins
};

const char* to_string(HypothesisId id);
HypothesisId hypothesis_from_string(std::string_view name);

struct HypothesisResult {
  bool holds = false;
  int first_violation = -1;  // grid index k of the first failed inequality
};

// Evaluates the id's grid inequality family exactly on f(k/n), k = 0..n.
// Entropy margins are compared through outward-rounded enclosures so a
// `holds` verdict is conservative. Endpoints must be integers; the value
// list must have length n+1.
HypothesisResult check_hypothesis(const std::vector<Rational>& values, int n,
                                  HypothesisId id, unsigned entropy_bits = 256);

}  // namespace shapebern
