#include "shapebern/corrections.hpp"

#include <stdexcept>
#include <string>

#include "shapebern/bernstein.hpp"
#include "shapebern/real.hpp"

namespace shapebern {

const char* to_string(CorrectionKind kind) {
  switch (kind) {
    case CorrectionKind::PhiInc: return "phi-inc";
    case CorrectionKind::PsiDec: return "psi-dec";
    case CorrectionKind::TildeVarphi: return "tilde-varphi";
    case CorrectionKind::VarphiCombined: return "varphi-combined";
    case CorrectionKind::PhiEntropy: return "entropy";
    case CorrectionKind::PhiConvexN: return "phi-convex";
  }
  return "?";
}

CorrectionKind correction_kind_from_string(std::string_view name) {
  if (name == "phi-inc") return CorrectionKind::PhiInc;
  if (name == "psi-dec") return CorrectionKind::PsiDec;
  if (name == "tilde-varphi") return CorrectionKind::TildeVarphi;
  if (name == "varphi-combined") return CorrectionKind::VarphiCombined;
  if (name == "entropy") return CorrectionKind::PhiEntropy;
  if (name == "phi-convex") return CorrectionKind::PhiConvexN;
  throw std::invalid_argument("unknown correction kind '" + std::string(name) + "'");
}

CorrectionTable::CorrectionTable(CorrectionKind kind, int n, int k_min,
                                 std::vector<Rational> entries)
    : kind_(kind), n_(n), k_min_(k_min), entries_(std::move(entries)) {
  if (entries_.empty()) throw std::invalid_argument("CorrectionTable: empty");
}

const Rational& CorrectionTable::at(int k) const {
  if (k < k_min_ || k > k_max())
    throw std::out_of_range("CorrectionTable: index " + std::to_string(k) +
                            " outside [" + std::to_string(k_min_) + "," +
                            std::to_string(k_max()) + "]");
  return entries_[static_cast<size_t>(k - k_min_)];
}

CorrectionTable correction_grid(CorrectionKind kind, int n) {
  if (kind == CorrectionKind::PhiEntropy)
    throw std::domain_error(
        "the entropy correction has no exact grid; use entropy_phi enclosures");
  if (n < 3) throw std::domain_error("correction_grid: requires n >= 3");
  const std::vector<Integer> row = binomial_row(n);
  auto inv = [&row](int k) { return make_rational(1, row[static_cast<size_t>(k)]); };

  switch (kind) {
    case CorrectionKind::PhiInc: {
      // anchor value 0 at x=0, increments 1/C(n,k+1); the first increment
      // lands on the known value 1/n at x=1/n
      std::vector<Rational> e(static_cast<size_t>(n));
      e[0] = Rational(0);
      for (int k = 0; k + 1 <= n - 1; ++k) e[static_cast<size_t>(k + 1)] = e[static_cast<size_t>(k)] + inv(k + 1);
      return CorrectionTable(kind, n, 0, std::move(e));
    }
    case CorrectionKind::PsiDec: {
      // anchor value 0 at x=1/n, increments 1/C(n,k)
      std::vector<Rational> e(static_cast<size_t>(n));
      e[0] = Rational(0);
      for (int k = 1; k + 1 <= n; ++k) e[static_cast<size_t>(k)] = e[static_cast<size_t>(k - 1)] + inv(k - 1 + 1);
      return CorrectionTable(kind, n, 1, std::move(e));
    }
    case CorrectionKind::TildeVarphi:
    case CorrectionKind::VarphiCombined: {
      // anchor value 0 at x=1/n, increments (1/C(n,k) + 1/C(n,k+1)) / 2
      std::vector<Rational> e(static_cast<size_t>(n) - 1);
      e[0] = Rational(0);
      for (int k = 1; k + 1 <= n - 1; ++k) {
        e[static_cast<size_t>(k)] =
            e[static_cast<size_t>(k - 1)] + (inv(k) + inv(k + 1)) / 2;
      }
      if (kind == CorrectionKind::VarphiCombined) {
        for (auto& v : e) v *= 2;
      }
      return CorrectionTable(kind, n, 1, std::move(e));
    }
    case CorrectionKind::PhiConvexN: {
      // anchors 0 at x=2/n and x=3/n; second-difference identity
      // value(k+2) - 2 value(k+1) + value(k) = 1/C(n,k) + 1/C(n,k+2)
      // run forward and backward from the anchors
      std::vector<Rational> e(static_cast<size_t>(n) + 1);
      e[2] = Rational(0);
      e[3] = Rational(0);
      for (int k = 2; k + 2 <= n; ++k) {
        e[static_cast<size_t>(k + 2)] =
            2 * e[static_cast<size_t>(k + 1)] - e[static_cast<size_t>(k)] + inv(k) + inv(k + 2);
      }
      for (int k = 1; k >= 0; --k) {
        e[static_cast<size_t>(k)] =
            2 * e[static_cast<size_t>(k + 1)] - e[static_cast<size_t>(k + 2)] + inv(k) + inv(k + 2);
      }
      return CorrectionTable(kind, n, 0, std::move(e));
    }
    case CorrectionKind::PhiEntropy:
      break;
  }
  throw std::logic_error("correction_grid: bad kind");
}

const char* to_string(EnvelopeKind kind) {
  switch (kind) {
    case EnvelopeKind::EpsilonMonotone: return "epsilon-monotone";
    case EnvelopeKind::EpsilonConvex: return "epsilon-convex";
    case EnvelopeKind::EtaMonotone: return "eta-monotone";
    case EnvelopeKind::EtaConvex: return "eta-convex";
  }
  return "?";
}

EnvelopeKind envelope_kind_from_string(std::string_view name) {
  if (name == "epsilon-monotone") return EnvelopeKind::EpsilonMonotone;
  if (name == "epsilon-convex") return EnvelopeKind::EpsilonConvex;
  if (name == "eta-monotone") return EnvelopeKind::EtaMonotone;
  if (name == "eta-convex") return EnvelopeKind::EtaConvex;
  throw std::invalid_argument("unknown envelope kind '" + std::string(name) + "'");
}

std::vector<Rational> envelope_power_coeffs(EnvelopeKind kind, int n) {
  switch (kind) {
    case EnvelopeKind::EpsilonMonotone: {
      if (n < 2) throw std::domain_error("epsilon-monotone: requires n >= 2");
      // 2x/(n-1) + x^n/n + x^(n-1)(1-x)
      std::vector<Rational> a(static_cast<size_t>(n) + 1, Rational(0));
      a[1] += make_rational(2, n - 1);
      a[static_cast<size_t>(n)] += make_rational(1, n) - 1;
      a[static_cast<size_t>(n - 1)] += 1;
      return a;
    }
    case EnvelopeKind::EpsilonConvex: {
      if (n < 6) throw std::domain_error("epsilon-convex: requires n >= 6");
      // 6x^2/(n-2) - 2(n-3)/(n(n-1)) (x^n + (1-x)^n)
      //   + 4/(n-1) (x^(n-1) + (1-x)^(n-1)) + x^(n-2)(1-x) + x(1-x)^(n-2)
      std::vector<Rational> a(static_cast<size_t>(n) + 1, Rational(0));
      auto add_one_minus_x_pow = [&a](int m, const Rational& c) {
        const std::vector<Integer> row = binomial_row(m);
        for (int j = 0; j <= m; ++j) {
          Rational term = c * row[static_cast<size_t>(j)];
          if (j % 2 != 0) term = -term;
          a[static_cast<size_t>(j)] += term;
        }
      };
      a[2] += make_rational(6, n - 2);
      const Rational c1 = make_rational(2 * (n - 3), static_cast<long>(n) * (n - 1));
      a[static_cast<size_t>(n)] -= c1;
      add_one_minus_x_pow(n, -c1);
      const Rational c2 = make_rational(4, n - 1);
      a[static_cast<size_t>(n - 1)] += c2;
      add_one_minus_x_pow(n - 1, c2);
      a[static_cast<size_t>(n - 2)] += 1;  // x^(n-2)(1-x) = x^(n-2) - x^(n-1)
      a[static_cast<size_t>(n - 1)] -= 1;
      // x(1-x)^(n-2): shift the binomial expansion by one
      {
        const std::vector<Integer> row = binomial_row(n - 2);
        for (int j = 0; j <= n - 2; ++j) {
          Rational term(row[static_cast<size_t>(j)]);
          if (j % 2 != 0) term = -term;
          a[static_cast<size_t>(j + 1)] += term;
        }
      }
      return a;
    }
    case EnvelopeKind::EtaMonotone:
      return reflect_power(envelope_power_coeffs(EnvelopeKind::EpsilonMonotone, n));
    case EnvelopeKind::EtaConvex:
      return reflect_power(envelope_power_coeffs(EnvelopeKind::EpsilonConvex, n));
  }
  throw std::logic_error("envelope_power_coeffs: bad kind");
}

Rational envelope(EnvelopeKind kind, int n, const Rational& x) {
  return eval_power(envelope_power_coeffs(kind, n), x);
}

Enclosure entropy_phi(const Rational& x, unsigned bits) {
  if (x < 0 || x > 1) throw std::domain_error("entropy_phi: argument outside [0,1]");
  if (bits == 0) bits = 64;
  if (x == 0 || x == 1) return Enclosure(Rational(0), Rational(0), bits);
  const Rational y = Rational(1) - x;
  Enclosure lx = log_enclosure(x, bits);
  Enclosure ly = log_enclosure(y, bits);
  // x >= 0 and 1-x >= 0, so scaling preserves the interval order.
  Rational lo = 6 * (x * lx.lower + y * ly.lower);
  Rational hi = 6 * (x * lx.upper + y * ly.upper);
  return Enclosure(std::move(lo), std::move(hi), bits);
}

Enclosure entropy_grid_second_difference(int n, int k, unsigned bits) {
  if (n < 2 || k < 0 || k > n - 2)
    throw std::domain_error("entropy_grid_second_difference: bad indices");
  Enclosure a = entropy_phi(make_rational(k + 2, n), bits);
  Enclosure b = entropy_phi(make_rational(k + 1, n), bits);
  Enclosure c = entropy_phi(make_rational(k, n), bits);
  return Enclosure(a.lower - 2 * b.upper + c.lower, a.upper - 2 * b.lower + c.upper, bits);
}

}  // namespace shapebern
