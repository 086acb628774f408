// Adaptive high-precision quadrature over (0,1) for the integral
// representations of the correction functions and their derivatives. This
// is the independent cross-oracle for the exact grids and the only
// evaluator away from the grid abscissae.
//
// The factor ((1-t)^a - t^a)/(1-2t) (and its log analogue) is removable at
// t = 1/2; inside the window |t - 1/2| < 2^-20 it is evaluated by a short
// Taylor expansion around the limit a*(1/2)^(a-1) to avoid cancellation.
// No integrand is ever evaluated at t = 0 or t = 1 (interior nodes only),
// and the abscissae where a representation needs an analytic reduction are
// handled explicitly:
//   PhiInc        x = 0: integrand identically 0
//   PsiDec        x = 0: reduces to -(n+1) (1-t)^n
//   TildeVarphi   x = 0: reduces to -(n+1)/2 (1-t)^(n-1)   (x2 for VarphiCombined)

#pragma once

#include <functional>
#include <stdexcept>
#include <variant>

#include "shapebern/corrections.hpp"
#include "shapebern/rational.hpp"
#include "shapebern/real.hpp"

namespace shapebern {

enum class DerivativeKind {
  PhiIncPrime,       // positive kernel
  TildeVarphiPrime,  // positive kernel
  PhiConvexNPrime,   // signed: negative left of the interior minimum
  PhiConvexNSecond,  // positive kernel
};

const char* to_string(DerivativeKind kind);

struct IntegrandSpec {
  std::variant<CorrectionKind, DerivativeKind> kind;
  int n = 3;
  Rational x;  // target abscissa in [0,1]
};

struct QuadratureResult {
  Real value;
  Real error_estimate;
  long evaluations = 0;
};

// Tolerance not reached within the evaluation budget; carries the best
// estimate obtained.
struct QuadratureError : std::runtime_error {
  QuadratureError(std::string what, QuadratureResult best_so_far)
      : std::runtime_error(std::move(what)), best(std::move(best_so_far)) {}
  QuadratureResult best;
};

using Integrand = std::function<Real(const Real&)>;

// Nested Gauss pair (15/31 points) with bisection refinement until the
// global error estimate drops below tol.
QuadratureResult integrate_adaptive(const Integrand& f, double tol,
                                    long max_evals = 4'000'000);

Integrand make_integrand(const IntegrandSpec& spec);

// The symmetric integral representation of the increasing-monotonicity
// correction; agrees with the PhiInc representation.
Integrand make_symmetric_phi_integrand(int n, const Rational& x);

// Requires tol >= 1e-14 and a CorrectionKind with an integral
// representation (everything except the entropy kind).
QuadratureResult integrate(const IntegrandSpec& spec, double tol);

// Same for the derivative kinds.
QuadratureResult integrate_derivative(const IntegrandSpec& spec, double tol);

namespace quad_detail {
// Exposed for tests: window-accurate evaluation helpers.
Real diff_quotient_pow(const Real& a, const Real& t);   // ((1-t)^a - t^a)/(1-2t)
Real log_quotient(const Real& t);                       // (ln(1-t) - ln t)/(1-2t)
}  // namespace quad_detail

}  // namespace shapebern
