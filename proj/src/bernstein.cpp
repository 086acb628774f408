#include "shapebern/bernstein.hpp"

#include <algorithm>

namespace shapebern {

BernsteinPoly::BernsteinPoly(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) throw std::invalid_argument("BernsteinPoly: no coefficients");
}

IntegerBernsteinPoly::IntegerBernsteinPoly(std::vector<Integer> coeffs)
    : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) throw std::invalid_argument("IntegerBernsteinPoly: no coefficients");
}

Rational eval(const BernsteinPoly& p, const Rational& x) {
  std::vector<Rational> level = p.coeffs();
  const Rational one_minus = Rational(1) - x;
  for (size_t len = level.size(); len > 1; --len) {
    for (size_t i = 0; i + 1 < len; ++i) {
      level[i] = one_minus * level[i] + x * level[i + 1];
    }
  }
  return level[0];
}

Rational eval(const IntegerBernsteinPoly& p, const Rational& x) {
  return eval(to_bernstein(p), x);
}

BernsteinPoly derivative(const BernsteinPoly& p) {
  const int n = p.degree();
  if (n < 1) throw std::domain_error("derivative: degree must be >= 1");
  std::vector<Rational> d(static_cast<size_t>(n));
  for (int k = 0; k < n; ++k) {
    d[static_cast<size_t>(k)] = Rational(n) * (p.coeff(k + 1) - p.coeff(k));
  }
  return BernsteinPoly(std::move(d));
}

BernsteinPoly second_derivative(const BernsteinPoly& p) {
  const int n = p.degree();
  if (n < 2) throw std::domain_error("second_derivative: degree must be >= 2");
  std::vector<Rational> d(static_cast<size_t>(n) - 1);
  const Rational factor = Rational(n) * Rational(n - 1);
  for (int k = 0; k + 2 <= n; ++k) {
    d[static_cast<size_t>(k)] =
        factor * (p.coeff(k + 2) - 2 * p.coeff(k + 1) + p.coeff(k));
  }
  return BernsteinPoly(std::move(d));
}

std::pair<BernsteinPoly, BernsteinPoly> subdivide(const BernsteinPoly& p) {
  const size_t m = p.coeffs().size();
  std::vector<Rational> level = p.coeffs();
  std::vector<Rational> left(m), right(m);
  left[0] = level[0];
  right[m - 1] = level[m - 1];
  const Rational half(1, 2);
  for (size_t len = m; len > 1; --len) {
    for (size_t i = 0; i + 1 < len; ++i) {
      level[i] = half * (level[i] + level[i + 1]);
    }
    left[m - len + 1] = level[0];
    right[len - 2] = level[len - 2];
  }
  return {BernsteinPoly(std::move(left)), BernsteinPoly(std::move(right))};
}

std::vector<Rational> to_power_basis(const BernsteinPoly& p) {
  // a_j = C(n,j) * sum_{k<=j} (-1)^(j-k) C(j,k) b_k
  const int n = p.degree();
  const std::vector<Integer> row_n = binomial_row(n);
  std::vector<Rational> power(static_cast<size_t>(n) + 1);
  for (int j = 0; j <= n; ++j) {
    const std::vector<Integer> row_j = binomial_row(j);
    Rational acc(0);
    for (int k = 0; k <= j; ++k) {
      Rational term = Rational(row_j[static_cast<size_t>(k)]) * p.coeff(k);
      if ((j - k) % 2 != 0) term = -term;
      acc += term;
    }
    power[static_cast<size_t>(j)] = Rational(row_n[static_cast<size_t>(j)]) * acc;
  }
  return power;
}

std::vector<Integer> to_power_basis(const IntegerBernsteinPoly& p) {
  // coefficient of x^j: sum_{k<=j} (-1)^(j-k) c_k C(n-k, j-k)
  const int n = p.degree();
  std::vector<Integer> power(static_cast<size_t>(n) + 1);
  for (int k = 0; k <= n; ++k) {
    const Integer& c = p.int_coeffs()[static_cast<size_t>(k)];
    if (c == 0) continue;
    const std::vector<Integer> row = binomial_row(n - k);
    for (int j = k; j <= n; ++j) {
      Integer term = c * row[static_cast<size_t>(j - k)];
      if ((j - k) % 2 != 0) term = -term;
      power[static_cast<size_t>(j)] += term;
    }
  }
  return power;
}

BernsteinPoly from_power_basis(const std::vector<Rational>& power, int degree) {
  if (power.empty()) throw std::invalid_argument("from_power_basis: no coefficients");
  if (static_cast<int>(power.size()) - 1 > degree)
    throw std::domain_error("from_power_basis: degree too small for the polynomial");
  // b_k = sum_{j<=k} a_j C(k,j) / C(n,j)
  const std::vector<Integer> row_n = binomial_row(degree);
  std::vector<Rational> coeffs(static_cast<size_t>(degree) + 1);
  for (int k = 0; k <= degree; ++k) {
    const std::vector<Integer> row_k = binomial_row(k);
    Rational acc(0);
    const int jmax = std::min<int>(k, static_cast<int>(power.size()) - 1);
    for (int j = 0; j <= jmax; ++j) {
      acc += power[static_cast<size_t>(j)] *
             make_rational(row_k[static_cast<size_t>(j)], row_n[static_cast<size_t>(j)]);
    }
    coeffs[static_cast<size_t>(k)] = std::move(acc);
  }
  return BernsteinPoly(std::move(coeffs));
}

Rational eval_power(const std::vector<Rational>& power, const Rational& x) {
  Rational acc(0);
  for (auto it = power.rbegin(); it != power.rend(); ++it) {
    acc = acc * x + *it;
  }
  return acc;
}

std::vector<Rational> reflect_power(const std::vector<Rational>& power) {
  // p(1-x) = sum_j x^j (-1)^j sum_{i>=j} a_i C(i,j)
  const size_t m = power.size();
  std::vector<Rational> out(m, Rational(0));
  for (size_t i = 0; i < m; ++i) {
    if (power[i] == 0) continue;
    const std::vector<Integer> row = binomial_row(static_cast<long>(i));
    for (size_t j = 0; j <= i; ++j) {
      Rational term = power[i] * Rational(row[j]);
      if (j % 2 != 0) term = -term;
      out[j] += term;
    }
  }
  return out;
}

BernsteinPoly to_bernstein(const IntegerBernsteinPoly& p) {
  const int n = p.degree();
  const std::vector<Integer> row = binomial_row(n);
  std::vector<Rational> coeffs(static_cast<size_t>(n) + 1);
  for (int k = 0; k <= n; ++k) {
    coeffs[static_cast<size_t>(k)] =
        make_rational(p.int_coeffs()[static_cast<size_t>(k)], row[static_cast<size_t>(k)]);
  }
  return BernsteinPoly(std::move(coeffs));
}

BernsteinPoly negate(const BernsteinPoly& p) {
  std::vector<Rational> coeffs = p.coeffs();
  for (auto& c : coeffs) c = -c;
  return BernsteinPoly(std::move(coeffs));
}

BernsteinPoly add(const BernsteinPoly& a, const BernsteinPoly& b) {
  if (a.degree() != b.degree())
    throw std::domain_error("add: mismatched degrees");
  std::vector<Rational> coeffs = a.coeffs();
  for (size_t k = 0; k < coeffs.size(); ++k) coeffs[k] += b.coeffs()[k];
  return BernsteinPoly(std::move(coeffs));
}

BernsteinPoly reflect(const BernsteinPoly& p) {
  std::vector<Rational> coeffs = p.coeffs();
  std::reverse(coeffs.begin(), coeffs.end());
  return BernsteinPoly(std::move(coeffs));
}

}  // namespace shapebern
