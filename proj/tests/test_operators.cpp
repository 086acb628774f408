#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "shapebern/operators.hpp"
#include "shapebern/search.hpp"

using namespace shapebern;

namespace {

std::vector<Rational> reference_grid6() {
  return {Rational(0),          make_rational(50, 60), make_rational(56, 60),
          make_rational(57, 60), make_rational(58, 60), make_rational(59, 60),
          Rational(1)};
}

std::vector<Rational> random_integer_endpoint_grid(std::mt19937_64& rng, int n) {
  std::vector<Rational> values(static_cast<size_t>(n) + 1);
  values[0] = Rational(static_cast<long>(rng() % 5) - 2);
  values[static_cast<size_t>(n)] = Rational(static_cast<long>(rng() % 5) - 2);
  for (int k = 1; k < n; ++k) {
    long num = static_cast<long>(rng() % 801) - 400;
    long den = 1 + static_cast<long>(rng() % 120);
    values[static_cast<size_t>(k)] = make_rational(num, den);
  }
  return values;
}

}  // namespace

TEST_CASE("sampling built-ins and grids") {
  // linear x at n=3
  auto linear = sample(FunctionSpec::linear(Rational(1), Rational(0)), 3);
  REQUIRE(linear.size() == 4);
  CHECK(*linear[0].exact == 0);
  CHECK(*linear[1].exact == make_rational(1, 3));
  CHECK(*linear[2].exact == make_rational(2, 3));
  CHECK(*linear[3].exact == 1);

  // the reference grid reproduces itself
  auto grid = sample(FunctionSpec::grid(reference_grid6()), 6);
  for (size_t k = 0; k < grid.size(); ++k) {
    CHECK(*grid[k].exact == reference_grid6()[k]);
  }
  CHECK_THROWS_AS(sample(FunctionSpec::grid(reference_grid6()), 5), std::domain_error);

  // sqrt detects rational squares
  auto roots = sample(FunctionSpec::sqrt_fn(), 4);
  CHECK(*roots[0].exact == 0);
  CHECK(*roots[1].exact == make_rational(1, 2));
  CHECK_FALSE(roots[2].is_exact());
  CHECK(*roots[4].exact == 1);
}

TEST_CASE("selector strings parse") {
  CHECK(FunctionSpec::parse("sqrt").name() == "sqrt");
  CHECK(FunctionSpec::parse("(x+1)^5").name() == "(x+1)^5");
  CHECK(*FunctionSpec::parse("linear:1/2,-3").at(Rational(2)).exact == -2);
  CHECK(*FunctionSpec::parse("poly:1,0,2").at(Rational(3)).exact == 19);
  CHECK(*FunctionSpec::parse("entropy").at(Rational(0)).exact == 0);
  CHECK_THROWS_AS(FunctionSpec::parse("cos"), std::invalid_argument);
}

TEST_CASE("floor operator reproduces the reference coefficients") {
  IntegerBernsteinPoly out =
      apply_integer(FunctionSpec::grid(reference_grid6()), 6, RoundingMode::floor());
  CHECK(out.int_coeffs() ==
        std::vector<Integer>{Integer(0), Integer(5), Integer(14), Integer(19), Integer(14),
                             Integer(5), Integer(1)});
  CHECK(control_values(out) ==
        std::vector<Rational>{Rational(0), make_rational(5, 6), make_rational(14, 15),
                              make_rational(19, 20), make_rational(14, 15),
                              make_rational(5, 6), Rational(1)});
}

TEST_CASE("floor operator reproduces x exactly") {
  IntegerBernsteinPoly out =
      apply_integer(FunctionSpec::linear(Rational(1), Rational(0)), 3, RoundingMode::floor());
  CHECK(out.int_coeffs() ==
        std::vector<Integer>{Integer(0), Integer(1), Integer(2), Integer(1)});
  std::vector<Integer> power = to_power_basis(out);
  CHECK(power == std::vector<Integer>{Integer(0), Integer(1), Integer(0), Integer(0)});
  CHECK(control_values(out) ==
        std::vector<Rational>{Rational(0), make_rational(1, 3), make_rational(2, 3),
                              Rational(1)});
}

TEST_CASE("nearest operator on sqrt at n=4 matches the high-precision oracle") {
  // oracle: round sqrt(k/4)*C(4,k) through refined enclosures at 256 bits
  std::vector<Integer> expected;
  for (int k = 0; k <= 4; ++k) {
    Rational x = make_rational(k, 4);
    Integer binom = binomial(4, k);
    if (auto e = exact_sqrt(x)) {
      expected.push_back(round_rational(*e * binom, RoundingMode::nearest()));
    } else {
      Enclosure enc = sqrt_enclosure(x, 256);
      auto r = round_enclosure(Enclosure(enc.lower * binom, enc.upper * binom, 256),
                               RoundingMode::nearest());
      REQUIRE(r.has_value());
      expected.push_back(*r);
    }
  }
  CHECK(expected == std::vector<Integer>{Integer(0), Integer(2), Integer(4), Integer(3),
                                         Integer(1)});

  IntegerBernsteinPoly out =
      apply_integer(FunctionSpec::sqrt_fn(), 4, RoundingMode::nearest());
  CHECK(out.int_coeffs() == expected);
}

TEST_CASE("integer variants require integer endpoints") {
  CHECK_THROWS_AS(
      apply_integer(FunctionSpec::linear(Rational(1), make_rational(1, 2)), 4,
                    RoundingMode::floor()),
      std::domain_error);
  // entropy endpoints are exactly 0, so it is accepted
  CHECK_NOTHROW(apply_integer(FunctionSpec::entropy(), 3, RoundingMode::floor()));
}

TEST_CASE("undecidable rounding propagates the sample index") {
  // sqrt(2/3)*3 = 2.449... nearest rounding cannot separate the half-integer
  // region at 2 bits of precision
  try {
    apply_integer(FunctionSpec::sqrt_fn(), 3, RoundingMode::nearest(), 2);
    FAIL("expected UndecidableRounding");
  } catch (const UndecidableRounding& e) {
    CHECK(e.index == 2);
  }
}

TEST_CASE("classical operator needs exact samples") {
  BernsteinPoly p = apply_classical(FunctionSpec::linear(make_rational(1, 2), Rational(1)), 4);
  CHECK(p.coeffs().front() == 1);
  CHECK(p.coeffs().back() == make_rational(3, 2));
  CHECK_THROWS_AS(apply_classical(FunctionSpec::sqrt_fn(), 3), EvaluationError);
}

TEST_CASE("rounding-error envelope for control values") {
  std::mt19937_64 rng(101);
  for (int trial = 0; trial < 120; ++trial) {
    int n = 1 + static_cast<int>(rng() % 30);
    std::vector<Rational> values = random_integer_endpoint_grid(rng, n);
    FunctionSpec f = FunctionSpec::grid(values);
    const std::vector<Integer> row = binomial_row(n);

    IntegerBernsteinPoly floor_out = apply_integer(f, n, RoundingMode::floor());
    std::vector<Rational> floor_controls = control_values(floor_out);
    TiePolicy tie = static_cast<TiePolicy>(rng() % 3);
    IntegerBernsteinPoly nearest_out = apply_integer(f, n, RoundingMode::nearest(tie));
    std::vector<Rational> nearest_controls = control_values(nearest_out);

    for (int k = 0; k <= n; ++k) {
      Rational inv = make_rational(1, row[static_cast<size_t>(k)]);
      Rational floor_err = values[static_cast<size_t>(k)] - floor_controls[static_cast<size_t>(k)];
      CHECK(floor_err >= 0);
      CHECK(floor_err <= inv);
      Rational nearest_err =
          values[static_cast<size_t>(k)] - nearest_controls[static_cast<size_t>(k)];
      CHECK(2 * nearest_err <= inv);
      CHECK(2 * nearest_err >= -inv);
    }
    // endpoint exactness
    CHECK(floor_controls.front() == values.front());
    CHECK(floor_controls.back() == values.back());
    CHECK(nearest_controls.front() == values.front());
    CHECK(nearest_controls.back() == values.back());
  }
}

TEST_CASE("reflection identity: reversed samples give reversed weights") {
  std::mt19937_64 rng(202);
  for (int trial = 0; trial < 100; ++trial) {
    int n = 1 + static_cast<int>(rng() % 20);
    std::vector<Rational> values = random_integer_endpoint_grid(rng, n);
    std::vector<Rational> reversed(values.rbegin(), values.rend());
    IntegerBernsteinPoly direct =
        apply_integer(FunctionSpec::grid(values), n, RoundingMode::floor());
    IntegerBernsteinPoly mirrored =
        apply_integer(FunctionSpec::grid(reversed), n, RoundingMode::floor());
    std::vector<Integer> back(mirrored.int_coeffs().rbegin(), mirrored.int_coeffs().rend());
    CHECK(direct.int_coeffs() == back);
  }
}

TEST_CASE("sqrt approximation tightens from n=10 to n=100") {
  FunctionSpec f = FunctionSpec::sqrt_fn();
  BernsteinPoly p10 = to_bernstein(apply_integer(f, 10, RoundingMode::floor()));
  BernsteinPoly p100 = to_bernstein(apply_integer(f, 100, RoundingMode::floor()));
  Enclosure sup10 = sup_grid_deviation(p10, f, 100);
  Enclosure sup100 = sup_grid_deviation(p100, f, 100);
  CHECK(sup100.upper < sup10.lower);
}

TEST_CASE("apply dispatches on the operator kind") {
  FunctionSpec f = FunctionSpec::grid(reference_grid6());
  OperatorOutput classical = apply(f, 6, OperatorKind::classical());
  CHECK(std::holds_alternative<BernsteinPoly>(classical));
  OperatorOutput floored = apply(f, 6, OperatorKind::floor_int());
  CHECK(std::holds_alternative<IntegerBernsteinPoly>(floored));
  CHECK(output_bernstein(floored).coeffs() ==
        control_values(std::get<IntegerBernsteinPoly>(floored)));
  OperatorOutput nearest = apply(f, 6, OperatorKind::nearest_int(TiePolicy::HalfEven));
  CHECK(std::holds_alternative<IntegerBernsteinPoly>(nearest));
}
