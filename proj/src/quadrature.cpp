#include "shapebern/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <queue>
#include <vector>

namespace shapebern {

const char* to_string(DerivativeKind kind) {
  switch (kind) {
    case DerivativeKind::PhiIncPrime: return "phi-inc-prime";
    case DerivativeKind::TildeVarphiPrime: return "tilde-varphi-prime";
    case DerivativeKind::PhiConvexNPrime: return "phi-convex-prime";
    case DerivativeKind::PhiConvexNSecond: return "phi-convex-second";
  }
  return "?";
}

namespace {

struct GaussRule {
  std::vector<Real> nodes;    // in (-1,1)
  std::vector<Real> weights;
};

GaussRule compute_gauss_rule(int m) {
  GaussRule rule;
  rule.nodes.resize(static_cast<size_t>(m));
  rule.weights.resize(static_cast<size_t>(m));
  for (int i = 1; i <= m; ++i) {
    // Newton refinement of the Chebyshev estimate; quadratic convergence
    // takes a double seed to full precision in a handful of steps.
    Real x(std::cos(M_PI * (i - 0.25) / (m + 0.5)));
    Real dp;
    for (int iter = 0; iter < 12; ++iter) {
      Real p0(1), p1 = x;
      for (int j = 2; j <= m; ++j) {
        Real p = ((2 * j - 1) * x * p1 - (j - 1) * p0) / j;
        p0 = p1;
        p1 = p;
      }
      dp = m * (x * p1 - p0) / (x * x - 1);
      Real dx = p1 / dp;
      x -= dx;
      if (abs(dx) < 1e-45) {
        // one more pass so dp matches the final node
        Real q0(1), q1 = x;
        for (int j = 2; j <= m; ++j) {
          Real q = ((2 * j - 1) * x * q1 - (j - 1) * q0) / j;
          q0 = q1;
          q1 = q;
        }
        dp = m * (x * q1 - q0) / (x * x - 1);
        break;
      }
    }
    rule.nodes[static_cast<size_t>(i - 1)] = x;
    rule.weights[static_cast<size_t>(i - 1)] = 2 / ((1 - x * x) * dp * dp);
  }
  return rule;
}

const GaussRule& rule15() {
  static const GaussRule rule = compute_gauss_rule(15);
  return rule;
}

const GaussRule& rule31() {
  static const GaussRule rule = compute_gauss_rule(31);
  return rule;
}

Real apply_rule(const GaussRule& rule, const Integrand& f, const Real& a, const Real& b) {
  const Real center = (a + b) / 2;
  const Real half_width = (b - a) / 2;
  Real sum(0);
  for (size_t i = 0; i < rule.nodes.size(); ++i) {
    sum += rule.weights[i] * f(center + half_width * rule.nodes[i]);
  }
  return sum * half_width;
}

struct Panel {
  Real a, b, value, err;
  double err_key;
};

struct PanelOrder {
  bool operator()(const Panel& lhs, const Panel& rhs) const {
    return lhs.err_key < rhs.err_key;
  }
};

Panel eval_panel(const Integrand& f, Real a, Real b) {
  Real coarse = apply_rule(rule15(), f, a, b);
  Real fine = apply_rule(rule31(), f, a, b);
  Real err = abs(fine - coarse);
  double key = err.convert_to<double>();
  return Panel{std::move(a), std::move(b), std::move(fine), std::move(err), key};
}

constexpr long kEvalsPerPanel = 46;  // 15 + 31 nodes

}  // namespace

QuadratureResult integrate_adaptive(const Integrand& f, double tol, long max_evals) {
  std::priority_queue<Panel, std::vector<Panel>, PanelOrder> queue;
  Real total_value(0), total_err(0);
  long evals = 0;

  auto push_panel = [&](Real a, Real b) {
    Panel p = eval_panel(f, std::move(a), std::move(b));
    evals += kEvalsPerPanel;
    total_value += p.value;
    total_err += p.err;
    queue.push(std::move(p));
  };

  // initial split at 1/2 keeps the removable-singularity window off panel
  // interiors until refinement actually needs it
  push_panel(Real(0), Real(1) / 2);
  push_panel(Real(1) / 2, Real(1));

  while (total_err > tol) {
    if (evals + 2 * kEvalsPerPanel > max_evals || queue.empty()) {
      throw QuadratureError("quadrature: tolerance " + std::to_string(tol) +
                                " not reached within the evaluation budget",
                            QuadratureResult{total_value, total_err, evals});
    }
    Panel worst = queue.top();
    queue.pop();
    total_value -= worst.value;
    total_err -= worst.err;
    Real mid = (worst.a + worst.b) / 2;
    push_panel(worst.a, mid);
    push_panel(mid, worst.b);
  }
  return QuadratureResult{std::move(total_value), std::move(total_err), evals};
}

namespace quad_detail {

namespace {

const Real& window_radius() {
  static const Real delta = ldexp(Real(1), -20);
  return delta;
}

}  // namespace

Real diff_quotient_pow(const Real& a, const Real& t) {
  const Real s = t - Real(1) / 2;
  if (abs(s) >= window_radius()) {
    return (pow(1 - t, a) - pow(t, a)) / (1 - 2 * t);
  }
  const Real half = Real(1) / 2;
  const Real g1 = a * pow(half, a - 1);
  const Real g3 = a * (a - 1) * (a - 2) * pow(half, a - 3);
  const Real g5 = a * (a - 1) * (a - 2) * (a - 3) * (a - 4) * pow(half, a - 5);
  const Real s2 = s * s;
  return g1 + g3 * s2 / 6 + g5 * s2 * s2 / 120;
}

Real log_quotient(const Real& t) {
  const Real s = t - Real(1) / 2;
  if (abs(s) >= window_radius()) {
    return (log(1 - t) - log(t)) / (1 - 2 * t);
  }
  const Real u2 = 4 * s * s;
  return 2 * (1 + u2 / 3 + u2 * u2 / 5);
}

}  // namespace quad_detail

namespace {

using quad_detail::diff_quotient_pow;
using quad_detail::log_quotient;

// order-6 truncated power series in s = t - 1/2
using Series = std::array<Real, 7>;

Series series_zero() {
  Series s;
  s.fill(Real(0));
  return s;
}

Series series_mul(const Series& a, const Series& b) {
  Series out = series_zero();
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; i + j < out.size(); ++j) {
      out[i + j] += a[i] * b[j];
    }
  }
  return out;
}

// (1/2 - s)^m truncated
Series series_half_minus_s_pow(int m) {
  Series out = series_zero();
  Real coef = pow(Real(1) / 2, m);  // C(m,0) (1/2)^m
  for (int j = 0; j <= std::min(m, 6); ++j) {
    out[static_cast<size_t>(j)] = (j % 2 == 0) ? coef : -coef;
    // next: C(m,j+1)(1/2)^(m-j-1) = prev * (m-j)/(j+1) * 2
    coef = coef * (m - j) * 2 / (j + 1);
  }
  return out;
}

// (1/2 + s)^2
Series series_half_plus_s_sq() {
  Series out = series_zero();
  out[0] = Real(1) / 4;
  out[1] = Real(1);
  out[2] = Real(1);
  return out;
}

// exp of a series with zero constant term
Series series_exp(const Series& mu) {
  Series out = series_zero();
  out[0] = Real(1);
  Series power = series_zero();
  power[0] = Real(1);
  Real factorial(1);
  for (int j = 1; j <= 6; ++j) {
    power = series_mul(power, mu);
    factorial *= j;
    for (size_t i = 0; i < out.size(); ++i) out[i] += power[i] / factorial;
  }
  return out;
}

// W(t) = t^a (1-t)^(n-a) expanded about t = 1/2: (1/2)^n exp(mu(s))
Series series_weight(int n, const Real& a) {
  Series mu = series_zero();
  const Real odd_scale = 2 * a - n;
  Real pow2(1);
  for (int m = 1; m <= 6; ++m) {
    pow2 *= 2;  // 2^m
    if (m % 2 == 1) {
      mu[static_cast<size_t>(m)] = odd_scale * pow2 / m;
    } else {
      mu[static_cast<size_t>(m)] = Real(-n) * pow2 / m;
    }
  }
  Series w = series_exp(mu);
  const Real scale = pow(Real(1) / 2, n);
  for (auto& c : w) c *= scale;
  return w;
}

Real series_eval(const Series& h, const Real& s) {
  Real acc(0);
  for (size_t i = h.size(); i-- > 0;) acc = acc * s + h[i];
  return acc;
}

// Window series of N(t)/(1-2t)^2 where N is the convexity-correction
// numerator (a-3) t^2 (1-t)^(n-2) - (a-2) t^3 (1-t)^(n-3) + t^a (1-t)^(n-a).
// N and N' both vanish at t = 1/2, so the quotient is a clean series.
Series convexity_quotient_series(int n, const Real& a) {
  Series lin = series_zero();
  lin[0] = Real(-1) / 2;
  lin[1] = -(2 * a - 5);
  Series numerator = series_mul(
      series_mul(series_half_plus_s_sq(), series_half_minus_s_pow(n - 3)), lin);
  Series w = series_weight(n, a);
  for (size_t i = 0; i < numerator.size(); ++i) numerator[i] += w[i];
  Series h = series_zero();
  for (size_t i = 2; i < numerator.size(); ++i) h[i - 2] = numerator[i] / 4;
  return h;
}

// Same for the derivative numerator
// t^2 (1-t)^(n-2) - t^3 (1-t)^(n-3) + t^a (1-t)^(n-a) (ln t - ln(1-t)).
Series convexity_prime_quotient_series(int n, const Real& a) {
  Series p = series_mul(series_half_plus_s_sq(), series_half_minus_s_pow(n - 3));
  Series numerator = series_zero();
  for (size_t i = 0; i + 1 < numerator.size(); ++i) numerator[i + 1] = -2 * p[i];
  // ln t - ln(1-t) = 2 atanh(2s)
  Series atanh2 = series_zero();
  atanh2[1] = Real(4);
  atanh2[3] = Real(16) / 3;
  atanh2[5] = Real(64) / 5;
  Series logterm = series_mul(series_weight(n, a), atanh2);
  for (size_t i = 0; i < numerator.size(); ++i) numerator[i] += logterm[i];
  Series h = series_zero();
  for (size_t i = 2; i < numerator.size(); ++i) h[i - 2] = numerator[i] / 4;
  return h;
}

void require_valid(const IntegrandSpec& spec) {
  if (spec.n < 3) throw std::domain_error("quadrature: requires n >= 3");
  if (spec.x < 0 || spec.x > 1)
    throw std::domain_error("quadrature: abscissa outside [0,1]");
}

Integrand build_correction_integrand(CorrectionKind kind, int n, const Rational& x) {
  const Real a = to_real(x * n);
  const Real nn(n);
  switch (kind) {
    case CorrectionKind::PhiInc: {
      if (x == 0) return [](const Real&) -> Real { return Real(0); };
      return [nn, a](const Real& t) -> Real {
        return (nn + 1) * t * pow(1 - t, nn - a) * diff_quotient_pow(a, t);
      };
    }
    case CorrectionKind::PsiDec: {
      if (x == 0)
        return [nn](const Real& t) -> Real { return -(nn + 1) * pow(1 - t, nn); };
      return [nn, a](const Real& t) -> Real {
        return (nn + 1) * t * pow(1 - t, nn - a + 1) * diff_quotient_pow(a - 1, t);
      };
    }
    case CorrectionKind::TildeVarphi:
    case CorrectionKind::VarphiCombined: {
      const Real scale = (kind == CorrectionKind::VarphiCombined) ? Real(1) : Real(1) / 2;
      if (x == 0) {
        return [nn, scale](const Real& t) -> Real {
          return -scale * (nn + 1) * pow(1 - t, nn - 1);
        };
      }
      return [nn, a, scale](const Real& t) -> Real {
        return scale * (nn + 1) * t * pow(1 - t, nn - a) * diff_quotient_pow(a - 1, t);
      };
    }
    case CorrectionKind::PhiConvexN: {
      Series h = convexity_quotient_series(n, a);
      const Real delta = ldexp(Real(1), -20);
      return [nn, a, h, delta](const Real& t) -> Real {
        const Real s = t - Real(1) / 2;
        const Real shell = t * t + (1 - t) * (1 - t);
        Real quotient;
        if (abs(s) < delta) {
          quotient = series_eval(h, s);
        } else {
          const Real one_minus = 1 - t;
          Real numerator = (a - 3) * t * t * pow(one_minus, nn - 2) -
                           (a - 2) * t * t * t * pow(one_minus, nn - 3) +
                           pow(t, a) * pow(one_minus, nn - a);
          const Real d = 1 - 2 * t;
          quotient = numerator / (d * d);
        }
        return (nn + 1) * shell * quotient;
      };
    }
    case CorrectionKind::PhiEntropy:
      break;
  }
  throw std::domain_error("quadrature: the entropy kind has no integral representation");
}

Integrand build_derivative_integrand(DerivativeKind kind, int n, const Rational& x) {
  const Real a = to_real(x * n);
  const Real nn(n);
  switch (kind) {
    case DerivativeKind::PhiIncPrime:
      return [nn, a](const Real& t) -> Real {
        return nn * (nn + 1) * pow(t, a + 1) * pow(1 - t, nn - a) * log_quotient(t);
      };
    case DerivativeKind::TildeVarphiPrime:
      return [nn, a](const Real& t) -> Real {
        return nn * (nn + 1) / 2 * pow(t, a) * pow(1 - t, nn - a) * log_quotient(t);
      };
    case DerivativeKind::PhiConvexNSecond:
      return [nn, a](const Real& t) -> Real {
        const Real shell = t * t + (1 - t) * (1 - t);
        const Real lq = log_quotient(t);
        return nn * nn * (nn + 1) * shell * pow(t, a) * pow(1 - t, nn - a) * lq * lq;
      };
    case DerivativeKind::PhiConvexNPrime: {
      Series h = convexity_prime_quotient_series(n, a);
      const Real delta = ldexp(Real(1), -20);
      return [nn, a, h, delta](const Real& t) -> Real {
        const Real s = t - Real(1) / 2;
        const Real shell = t * t + (1 - t) * (1 - t);
        Real quotient;
        if (abs(s) < delta) {
          quotient = series_eval(h, s);
        } else {
          const Real one_minus = 1 - t;
          Real numerator = t * t * pow(one_minus, nn - 2) -
                           t * t * t * pow(one_minus, nn - 3) +
                           pow(t, a) * pow(one_minus, nn - a) * (log(t) - log(one_minus));
          const Real d = 1 - 2 * t;
          quotient = numerator / (d * d);
        }
        return nn * (nn + 1) * shell * quotient;
      };
    }
  }
  throw std::logic_error("build_derivative_integrand: bad kind");
}

}  // namespace

Integrand make_integrand(const IntegrandSpec& spec) {
  require_valid(spec);
  if (const auto* correction = std::get_if<CorrectionKind>(&spec.kind)) {
    return build_correction_integrand(*correction, spec.n, spec.x);
  }
  return build_derivative_integrand(std::get<DerivativeKind>(spec.kind), spec.n, spec.x);
}

Integrand make_symmetric_phi_integrand(int n, const Rational& x) {
  if (n < 3) throw std::domain_error("quadrature: requires n >= 3");
  if (x < 0 || x > 1) throw std::domain_error("quadrature: abscissa outside [0,1]");
  const Real a = to_real(x * n);
  const Real nn(n);
  return [nn, a](const Real& t) -> Real {
    const Real b = nn - a;
    return (nn + 1) / 2 * t * (1 - t) * (pow(1 - t, b - 1) + pow(t, b - 1)) *
           diff_quotient_pow(a, t);
  };
}

namespace {

QuadratureResult run(const IntegrandSpec& spec, double tol) {
  if (tol < 1e-14) throw std::domain_error("quadrature: tolerance below 1e-14");
  return integrate_adaptive(make_integrand(spec), tol);
}

}  // namespace

QuadratureResult integrate(const IntegrandSpec& spec, double tol) { return run(spec, tol); }

QuadratureResult integrate_derivative(const IntegrandSpec& spec, double tol) {
  if (!std::holds_alternative<DerivativeKind>(spec.kind))
    throw std::domain_error("integrate_derivative: spec does not name a derivative kind");
  return run(spec, tol);
}

}  // namespace shapebern
