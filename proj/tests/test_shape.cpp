#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "shapebern/corrections.hpp"
#include "shapebern/operators.hpp"
#include "shapebern/shape.hpp"

using namespace shapebern;

namespace {

std::vector<Rational> reference_grid6() {
  return {Rational(0),          make_rational(50, 60), make_rational(56, 60),
          make_rational(57, 60), make_rational(58, 60), make_rational(59, 60),
          Rational(1)};
}

Rational rational_in_unit(std::mt19937_64& rng, long den_bound = 64) {
  long den = 1 + static_cast<long>(rng() % den_bound);
  long num = static_cast<long>(rng() % (den + 1));
  return make_rational(num, den);
}

BernsteinPoly random_poly(std::mt19937_64& rng, int degree, long num_range = 40) {
  std::vector<Rational> coeffs(static_cast<size_t>(degree) + 1);
  for (auto& c : coeffs) {
    long num = static_cast<long>(rng() % (2 * num_range + 1)) - num_range;
    long den = 1 + static_cast<long>(rng() % 12);
    c = make_rational(num, den);
  }
  return BernsteinPoly(std::move(coeffs));
}

// grid with increments margin_k + nonnegative jitter and an integer-valued
// final sum; margins indexed by k = 0..n-1
std::vector<Rational> grid_with_increments(std::mt19937_64& rng, int n,
                                           const std::vector<Rational>& margins) {
  std::vector<Rational> increments(static_cast<size_t>(n));
  Rational total(0);
  for (int k = 0; k < n; ++k) {
    Rational jitter = make_rational(static_cast<long>(rng() % 200), 100 * n);
    increments[static_cast<size_t>(k)] = margins[static_cast<size_t>(k)] + jitter;
    total += increments[static_cast<size_t>(k)];
  }
  // raise the last increment so the endpoint lands on an integer
  Rational bump = Rational(floor_to_int(total)) + 1 - total;
  increments.back() += bump;
  std::vector<Rational> values(static_cast<size_t>(n) + 1);
  values[0] = Rational(static_cast<long>(rng() % 3) - 1);
  for (int k = 0; k < n; ++k) {
    values[static_cast<size_t>(k + 1)] = values[static_cast<size_t>(k)] + increments[static_cast<size_t>(k)];
  }
  return values;
}

// grid with second differences margin_k + jitter (k = 0..n-2) and integer
// endpoints; the initial slope is solved for so f(1) is an integer
std::vector<Rational> grid_with_second_differences(std::mt19937_64& rng, int n,
                                                   const std::vector<Rational>& margins) {
  std::vector<Rational> second(static_cast<size_t>(n) - 1);
  for (int k = 0; k + 2 <= n; ++k) {
    Rational jitter = make_rational(static_cast<long>(rng() % 150), 50 * n);
    second[static_cast<size_t>(k)] = margins[static_cast<size_t>(k)] + jitter;
  }
  Rational f0(static_cast<long>(rng() % 3) - 1);
  Rational weighted(0);
  for (int k = 0; k + 2 <= n; ++k) {
    weighted += Rational(n - 1 - k) * second[static_cast<size_t>(k)];
  }
  Rational f1 = Rational(floor_to_int(f0 + weighted)) + 1 + static_cast<long>(rng() % 2);
  Rational slope0 = (f1 - f0 - weighted) / n;
  std::vector<Rational> values(static_cast<size_t>(n) + 1);
  values[0] = f0;
  Rational slope = slope0;
  for (int k = 0; k < n; ++k) {
    values[static_cast<size_t>(k + 1)] = values[static_cast<size_t>(k)] + slope;
    if (k + 2 <= n) slope += second[static_cast<size_t>(k)];
  }
  return values;
}

std::vector<Rational> negated(std::vector<Rational> values) {
  for (auto& v : values) v = -v;
  return values;
}

const OperatorKind kIntegerOps[] = {
    OperatorKind::floor_int(), OperatorKind::nearest_int(TiePolicy::HalfUp),
    OperatorKind::nearest_int(TiePolicy::HalfDown),
    OperatorKind::nearest_int(TiePolicy::HalfEven)};

}  // namespace

TEST_CASE("coefficient shape tests") {
  BernsteinPoly controls(control_values(
      apply_integer(FunctionSpec::grid(reference_grid6()), 6, RoundingMode::floor())));
  CHECK_FALSE(coefficient_shape_test(controls, ShapeQuery::MonotoneIncreasing));
  CHECK(controls.coeff(4) - controls.coeff(3) == make_rational(-1, 60));

  BernsteinPoly as_x(std::vector<Rational>{Rational(0), make_rational(1, 3),
                                           make_rational(2, 3), Rational(1)});
  CHECK(coefficient_shape_test(as_x, ShapeQuery::MonotoneIncreasing));
  CHECK_FALSE(coefficient_shape_test(as_x, ShapeQuery::MonotoneDecreasing));

  BernsteinPoly constant(std::vector<Rational>(5, make_rational(3, 7)));
  for (ShapeQuery q : {ShapeQuery::MonotoneIncreasing, ShapeQuery::MonotoneDecreasing,
                       ShapeQuery::Convex, ShapeQuery::Concave}) {
    CHECK(coefficient_shape_test(constant, q));
  }

  CHECK_THROWS_AS(
      coefficient_shape_test(BernsteinPoly(std::vector<Rational>{Rational(1)}),
                             ShapeQuery::MonotoneIncreasing),
      std::domain_error);
  CHECK_THROWS_AS(
      coefficient_shape_test(BernsteinPoly(std::vector<Rational>{Rational(0), Rational(1)}),
                             ShapeQuery::Convex),
      std::domain_error);
}

TEST_CASE("nonnegativity certificates") {
  // all coefficients nonnegative: certified immediately
  BernsteinPoly plain(std::vector<Rational>{Rational(1), Rational(0), make_rational(2, 3)});
  Certificate direct = certify_nonnegative(plain, 10);
  CHECK(direct.status == Certificate::Status::CertifiedByCoefficients);
  CHECK(direct.depth == 0);

  // (x-1/2)^2 needs exactly one split
  BernsteinPoly square(std::vector<Rational>{make_rational(1, 4), make_rational(-1, 4),
                                             make_rational(1, 4)});
  Certificate split = certify_nonnegative(square, 10);
  CHECK(split.status == Certificate::Status::CertifiedBySubdivision);
  CHECK(split.depth == 1);

  // derivative of the degree-6 counterexample: refuted with an exact witness
  BernsteinPoly deriv = derivative(to_bernstein(
      apply_integer(FunctionSpec::grid(reference_grid6()), 6, RoundingMode::floor())));
  Certificate refuted = certify_nonnegative(deriv, 40);
  REQUIRE(refuted.status == Certificate::Status::Refuted);
  REQUIRE(refuted.witness_x.has_value());
  CHECK(eval(deriv, *refuted.witness_x) == *refuted.witness_value);
  CHECK(*refuted.witness_value < 0);
  // the reported value at the published abscissa is negative as well
  CHECK(eval(deriv, make_rational(7, 10)) == make_rational(-73, 2000));

  // endpoint refutation happens before any subdivision
  BernsteinPoly bad_start(std::vector<Rational>{Rational(-1), Rational(5), Rational(5)});
  Certificate endpoint = certify_nonnegative(bad_start, 10);
  REQUIRE(endpoint.status == Certificate::Status::Refuted);
  CHECK(*endpoint.witness_x == 0);
  CHECK(*endpoint.witness_value == -1);

  // a positive polynomial with a deep dip: depth cap exhaustion is Unknown
  BernsteinPoly dip(std::vector<Rational>{make_rational(1, 1000), make_rational(-1, 1000),
                                          make_rational(1, 1000)});
  Certificate unknown = certify_nonnegative(dip, 0);
  CHECK(unknown.status == Certificate::Status::Unknown);
  CHECK(unknown.depth == 0);
}

TEST_CASE("certify_shape delegates through derivatives") {
  BernsteinPoly refuted_poly = to_bernstein(
      apply_integer(FunctionSpec::grid(reference_grid6()), 6, RoundingMode::floor()));
  Certificate cert = certify_shape(refuted_poly, ShapeQuery::MonotoneIncreasing, 40);
  CHECK(cert.status == Certificate::Status::Refuted);
  CHECK(cert.query == ShapeQuery::MonotoneIncreasing);

  BernsteinPoly as_x = to_bernstein(apply_integer(
      FunctionSpec::linear(Rational(1), Rational(0)), 7, RoundingMode::floor()));
  CHECK(certify_shape(as_x, ShapeQuery::MonotoneIncreasing, 10).status ==
        Certificate::Status::CertifiedByCoefficients);

  BernsteinPoly sqrt5 =
      to_bernstein(apply_integer(FunctionSpec::sqrt_fn(), 5, RoundingMode::floor()));
  CHECK(certify_shape(sqrt5, ShapeQuery::Concave, 40).status ==
        Certificate::Status::Refuted);

  CHECK_THROWS_AS(certify_shape(BernsteinPoly(std::vector<Rational>{Rational(0), Rational(1)}),
                                ShapeQuery::Convex, 10),
                  std::domain_error);
}

TEST_CASE("certified polynomials have the certified sign everywhere") {
  std::mt19937_64 rng(31);
  int certified_seen = 0;
  while (certified_seen < 40) {
    int degree = 2 + static_cast<int>(rng() % 8);
    BernsteinPoly p = random_poly(rng, degree);
    ShapeQuery q = static_cast<ShapeQuery>(rng() % 4);
    Certificate cert = certify_shape(p, q, 12);
    if (!cert.certified()) continue;
    ++certified_seen;
    BernsteinPoly target =
        (q == ShapeQuery::MonotoneIncreasing || q == ShapeQuery::MonotoneDecreasing)
            ? derivative(p)
            : second_derivative(p);
    bool negative_side =
        (q == ShapeQuery::MonotoneDecreasing || q == ShapeQuery::Concave);
    for (int pt = 0; pt < 25; ++pt) {
      Rational v = eval(target, rational_in_unit(rng, 257));
      CHECK((negative_side ? v <= 0 : v >= 0));
    }
  }
}

TEST_CASE("refutations re-evaluate to strictly violating values") {
  std::mt19937_64 rng(32);
  int refuted_seen = 0;
  while (refuted_seen < 40) {
    int degree = 2 + static_cast<int>(rng() % 8);
    BernsteinPoly p = random_poly(rng, degree);
    ShapeQuery q = static_cast<ShapeQuery>(rng() % 4);
    Certificate cert = certify_shape(p, q, 12);
    if (cert.status != Certificate::Status::Refuted) continue;
    ++refuted_seen;
    BernsteinPoly target =
        (q == ShapeQuery::MonotoneIncreasing || q == ShapeQuery::MonotoneDecreasing)
            ? derivative(p)
            : second_derivative(p);
    bool negative_side =
        (q == ShapeQuery::MonotoneDecreasing || q == ShapeQuery::Concave);
    Rational v = eval(target, *cert.witness_x);
    Rational reported = *cert.witness_value;
    if (negative_side) reported = -reported;  // certificate works on the negated target
    CHECK(v == reported);
    CHECK((negative_side ? v > 0 : v < 0));
  }
}

TEST_CASE("reflection duality of decreasing and increasing certificates") {
  std::mt19937_64 rng(33);
  for (int trial = 0; trial < 60; ++trial) {
    int degree = 1 + static_cast<int>(rng() % 8);
    BernsteinPoly p = random_poly(rng, degree);
    Certificate dec = certify_shape(p, ShapeQuery::MonotoneDecreasing, 12);
    Certificate inc = certify_shape(reflect(p), ShapeQuery::MonotoneIncreasing, 12);
    CHECK(dec.status == inc.status);
  }
}

TEST_CASE("hypothesis checks on the worked examples") {
  // (x+1)^5 at n=5: increments all exceed 1/5
  std::vector<Rational> shifted;
  for (int k = 0; k <= 5; ++k) {
    shifted.push_back(rational_pow(make_rational(k, 5) + 1, 5));
  }
  CHECK(shifted[1] - shifted[0] == make_rational(4651, 3125));
  HypothesisResult strong = check_hypothesis(shifted, 5, HypothesisId::Thm1m_a);
  CHECK(strong.holds);

  // the reference grid fails the interior increment condition at k=2
  HypothesisResult weak = check_hypothesis(reference_grid6(), 6, HypothesisId::PropPhiInc);
  CHECK_FALSE(weak.holds);
  CHECK(weak.first_violation == 2);

  // f(x) = 2x has increments 2/n >= 1/n for every n
  for (int n : {1, 2, 5, 9}) {
    std::vector<Rational> doubled;
    for (int k = 0; k <= n; ++k) doubled.push_back(make_rational(2 * k, n));
    CHECK(check_hypothesis(doubled, n, HypothesisId::Thm1m_a).holds);
  }

  CHECK_THROWS_AS(check_hypothesis(reference_grid6(), 5, HypothesisId::Thm1m_a),
                  std::domain_error);
  std::vector<Rational> bad_endpoint{make_rational(1, 2), Rational(1)};
  CHECK_THROWS_AS(check_hypothesis(bad_endpoint, 1, HypothesisId::Thm1m_a),
                  std::domain_error);
}

TEST_CASE("unit-slope and entropy margin conditions imply certified outputs") {
  std::mt19937_64 rng(34);
  // monotone families
  for (int trial = 0; trial < 60; ++trial) {
    int n = 3 + static_cast<int>(rng() % 18);
    std::vector<Rational> margins(static_cast<size_t>(n), make_rational(1, n));
    std::vector<Rational> values = grid_with_increments(rng, n, margins);
    REQUIRE(check_hypothesis(values, n, HypothesisId::Thm1m_a).holds);
    std::vector<Rational> mirrored(values.rbegin(), values.rend());
    REQUIRE(check_hypothesis(mirrored, n, HypothesisId::Thm1m_b).holds);
    for (const OperatorKind& op : kIntegerOps) {
      BernsteinPoly out = output_bernstein(apply(FunctionSpec::grid(values), n, op));
      CHECK(coefficient_shape_test(out, ShapeQuery::MonotoneIncreasing));
      BernsteinPoly dual = output_bernstein(apply(FunctionSpec::grid(mirrored), n, op));
      CHECK(coefficient_shape_test(dual, ShapeQuery::MonotoneDecreasing));
    }
  }
  // entropy-margin convexity families
  for (int trial = 0; trial < 40; ++trial) {
    int n = 2 + static_cast<int>(rng() % 14);
    std::vector<Rational> margins(static_cast<size_t>(n) - 1);
    for (int k = 0; k + 2 <= n; ++k) {
      margins[static_cast<size_t>(k)] = entropy_grid_second_difference(n, k, 192).upper;
    }
    std::vector<Rational> values = grid_with_second_differences(rng, n, margins);
    REQUIRE(check_hypothesis(values, n, HypothesisId::Thm1c_a).holds);
    std::vector<Rational> flipped = negated(values);
    REQUIRE(check_hypothesis(flipped, n, HypothesisId::Thm1c_b).holds);
    for (const OperatorKind& op : kIntegerOps) {
      BernsteinPoly out = output_bernstein(apply(FunctionSpec::grid(values), n, op));
      CHECK(coefficient_shape_test(out, ShapeQuery::Convex));
      BernsteinPoly dual = output_bernstein(apply(FunctionSpec::grid(flipped), n, op));
      CHECK(coefficient_shape_test(dual, ShapeQuery::Concave));
    }
  }
}

TEST_CASE("correction-margin conditions imply certified outputs") {
  std::mt19937_64 rng(35);
  for (int trial = 0; trial < 60; ++trial) {
    int n = 3 + static_cast<int>(rng() % 18);
    CorrectionTable combined = correction_grid(CorrectionKind::VarphiCombined, n);
    std::vector<Rational> margins(static_cast<size_t>(n), Rational(0));
    for (int k = 1; k <= n - 2; ++k) margins[static_cast<size_t>(k)] = combined.increment(k);
    std::vector<Rational> values = grid_with_increments(rng, n, margins);
    REQUIRE(check_hypothesis(values, n, HypothesisId::Thm3m_a).holds);
    std::vector<Rational> mirrored(values.rbegin(), values.rend());
    REQUIRE(check_hypothesis(mirrored, n, HypothesisId::Thm3m_b).holds);
    for (const OperatorKind& op : kIntegerOps) {
      CHECK(coefficient_shape_test(
          output_bernstein(apply(FunctionSpec::grid(values), n, op)),
          ShapeQuery::MonotoneIncreasing));
      CHECK(coefficient_shape_test(
          output_bernstein(apply(FunctionSpec::grid(mirrored), n, op)),
          ShapeQuery::MonotoneDecreasing));
    }
  }
  for (int trial = 0; trial < 40; ++trial) {
    int n = 3 + static_cast<int>(rng() % 14);
    const std::vector<Integer> row = binomial_row(n);
    std::vector<Rational> margins(static_cast<size_t>(n) - 1);
    for (int k = 0; k + 2 <= n; ++k) {
      margins[static_cast<size_t>(k)] = make_rational(1, row[static_cast<size_t>(k)]) +
                                        make_rational(1, row[static_cast<size_t>(k + 2)]);
    }
    std::vector<Rational> values = grid_with_second_differences(rng, n, margins);
    REQUIRE(check_hypothesis(values, n, HypothesisId::Thm3c_a).holds);
    std::vector<Rational> flipped = negated(values);
    REQUIRE(check_hypothesis(flipped, n, HypothesisId::Thm3c_b).holds);
    for (const OperatorKind& op : kIntegerOps) {
      CHECK(coefficient_shape_test(
          output_bernstein(apply(FunctionSpec::grid(values), n, op)), ShapeQuery::Convex));
      CHECK(coefficient_shape_test(
          output_bernstein(apply(FunctionSpec::grid(flipped), n, op)), ShapeQuery::Concave));
    }
  }
}

TEST_CASE("degrees 1 and 2 preserve monotonicity outright") {
  for (int q = 1; q <= 12; ++q) {
    for (int n : {1, 2}) {
      // enumerate monotone increasing grids with values in {0/q..q/q} and
      // integer endpoints, plus their decreasing mirrors
      std::vector<std::vector<Rational>> grids;
      if (n == 1) {
        grids.push_back({Rational(0), Rational(0)});
        grids.push_back({Rational(0), Rational(1)});
        grids.push_back({Rational(1), Rational(1)});
      } else {
        for (int f0 = 0; f0 <= 1; ++f0) {
          for (int f1 = f0; f1 <= 1; ++f1) {
            for (int mid = 0; mid <= q; ++mid) {
              Rational m = make_rational(mid, q);
              if (m < f0 || m > f1) continue;
              grids.push_back({Rational(f0), m, Rational(f1)});
            }
          }
        }
      }
      for (const auto& grid : grids) {
        for (const OperatorKind& op : kIntegerOps) {
          CHECK(coefficient_shape_test(output_bernstein(apply(FunctionSpec::grid(grid), n, op)),
                                       ShapeQuery::MonotoneIncreasing));
          std::vector<Rational> mirrored(grid.rbegin(), grid.rend());
          CHECK(coefficient_shape_test(
              output_bernstein(apply(FunctionSpec::grid(mirrored), n, op)),
              ShapeQuery::MonotoneDecreasing));
        }
      }
    }
  }
}

TEST_CASE("hypothesis ids round trip through strings") {
  for (const char* name : {"Thm1m_a", "Thm1m_b", "Thm3m_a", "Thm3m_b", "PropPhiInc",
                           "PropPsiDec", "PropTildeVarphi_a", "PropTildeVarphi_b", "Thm1c_a",
                           "Thm1c_b", "Thm3c_a", "Thm3c_b", "PropConvexFloor",
                           "PropConcaveFloor", "PropConvexNearest"}) {
    CHECK(to_string(hypothesis_from_string(name)) == std::string(name));
  }
  CHECK_THROWS_AS(hypothesis_from_string("Thm9z"), std::invalid_argument);
}
