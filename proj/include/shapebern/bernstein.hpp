// Polynomials in Bernstein form with exact rational coefficients:
// evaluation, first/second derivatives, midpoint subdivision and power
// basis conversion. An integer-coefficient variant stores the raw integer
// weights c_k of sum c_k x^k (1-x)^(n-k).

#pragma once

#include <utility>
#include <vector>

#include "shapebern/rational.hpp"

namespace shapebern {

// Coefficients b_0..b_n against the basis p_{n,k}(x) = C(n,k) x^k (1-x)^(n-k).
class BernsteinPoly {
 public:
  BernsteinPoly() : coeffs_(1, Rational(0)) {}
  explicit BernsteinPoly(std::vector<Rational> coeffs);

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<Rational>& coeffs() const { return coeffs_; }
  const Rational& coeff(int k) const { return coeffs_.at(static_cast<size_t>(k)); }

 private:
  std::vector<Rational> coeffs_;
};

// Integer weights c_0..c_n of sum c_k x^k (1-x)^(n-k); equivalently a
// BernsteinPoly with b_k = c_k / C(n,k).
class IntegerBernsteinPoly {
 public:
  IntegerBernsteinPoly() : coeffs_(1, Integer(0)) {}
  explicit IntegerBernsteinPoly(std::vector<Integer> coeffs);

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<Integer>& int_coeffs() const { return coeffs_; }

 private:
  std::vector<Integer> coeffs_;
};

// Exact de Casteljau evaluation (valid for any rational x, not just [0,1]).
Rational eval(const BernsteinPoly& p, const Rational& x);
Rational eval(const IntegerBernsteinPoly& p, const Rational& x);

// Degree n-1 polynomial with coefficients n*(b_{k+1} - b_k).
BernsteinPoly derivative(const BernsteinPoly& p);

// Degree n-2 polynomial with coefficients n(n-1)*(b_{k+2} - 2 b_{k+1} + b_k);
// identical to derivative(derivative(p)).
BernsteinPoly second_derivative(const BernsteinPoly& p);

// Midpoint de Casteljau split: Bernstein forms of p on [0,1/2] and [1/2,1],
// both reparametrized to [0,1]. left's last coefficient = right's first
// = p(1/2).
std::pair<BernsteinPoly, BernsteinPoly> subdivide(const BernsteinPoly& p);

// Coefficients a_0..a_n of sum a_j x^j.
std::vector<Rational> to_power_basis(const BernsteinPoly& p);
std::vector<Integer> to_power_basis(const IntegerBernsteinPoly& p);

// Bernstein form of degree `degree` (>= deg of the power polynomial).
BernsteinPoly from_power_basis(const std::vector<Rational>& power, int degree);

Rational eval_power(const std::vector<Rational>& power, const Rational& x);

// Power coefficients of x -> p(1-x).
std::vector<Rational> reflect_power(const std::vector<Rational>& power);

BernsteinPoly to_bernstein(const IntegerBernsteinPoly& p);

BernsteinPoly negate(const BernsteinPoly& p);
BernsteinPoly add(const BernsteinPoly& a, const BernsteinPoly& b);  // equal degrees
BernsteinPoly reflect(const BernsteinPoly& p);  // p(1-x): reversed coefficients

}  // namespace shapebern
