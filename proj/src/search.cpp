#include "shapebern/search.hpp"

#include <algorithm>

namespace shapebern {

std::uint64_t splitmix64(std::uint64_t state) {
  std::uint64_t z = state + 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

namespace {

long uniform_long(std::mt19937_64& rng, long lo, long hi) {
  return lo + static_cast<long>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

std::vector<Rational> monotone_increasing_uniform(int n, long resolution,
                                                  std::mt19937_64& rng) {
  const long d = uniform_long(rng, 1, resolution);
  const long span = uniform_long(rng, 0, 2);  // f(1) - f(0)
  const long offset = uniform_long(rng, -1, 1);
  std::vector<long> numerators(static_cast<size_t>(std::max(0, n - 1)));
  for (auto& u : numerators) u = uniform_long(rng, 0, span * d);
  std::sort(numerators.begin(), numerators.end());
  std::vector<Rational> values;
  values.reserve(static_cast<size_t>(n) + 1);
  values.emplace_back(offset);
  for (long u : numerators) values.push_back(offset + make_rational(u, d));
  values.emplace_back(offset + span);
  return values;
}

std::vector<Rational> monotone_increasing_biased(int n, long resolution,
                                                 std::mt19937_64& rng) {
  // Ramp to 1 quickly, then crawl: small increments make the floor losses
  // dominate the function's own growth.
  const long d = std::max<long>(1, resolution);
  std::vector<Rational> values(static_cast<size_t>(n) + 1);
  values[static_cast<size_t>(n)] = Rational(1);
  Rational current(1);
  for (int k = n - 1; k >= 1; --k) {
    current -= make_rational(uniform_long(rng, 0, 3), d);
    if (current < 0) current = Rational(0);
    values[static_cast<size_t>(k)] = current;
  }
  values[0] = Rational(0);
  return values;
}

std::vector<Rational> convex_samples(int n, long resolution, std::mt19937_64& rng,
                                     SampleBias bias) {
  if (n == 1) {
    return {Rational(0), Rational(uniform_long(rng, -2, 2))};
  }
  const long d = bias == SampleBias::BoundaryBiased ? std::max<long>(1, resolution)
                                                    : uniform_long(rng, 1, resolution);
  const long delta_max =
      bias == SampleBias::BoundaryBiased ? 2 : std::max<long>(1, 2 * d / n);
  std::vector<long> second_diffs(static_cast<size_t>(n - 1));
  for (auto& s : second_diffs) s = uniform_long(rng, 0, delta_max);
  const long slope0 = uniform_long(rng, -d, d);

  auto accumulate = [&]() {
    std::vector<long> u(static_cast<size_t>(n) + 1, 0);
    long slope = slope0;
    for (int k = 0; k < n; ++k) {
      u[static_cast<size_t>(k + 1)] = u[static_cast<size_t>(k)] + slope;
      if (k < n - 1) slope += second_diffs[static_cast<size_t>(k)];
    }
    return u;
  };
  std::vector<long> u = accumulate();
  // make f(1) an integer by raising the last curvature step; u[n] moves by
  // exactly the same amount
  long rem = ((u[static_cast<size_t>(n)] % d) + d) % d;
  if (rem != 0) {
    second_diffs.back() += d - rem;
    u = accumulate();
  }
  std::vector<Rational> values;
  values.reserve(u.size());
  for (long v : u) values.push_back(make_rational(v, d));
  return values;
}

}  // namespace

std::vector<Rational> random_shaped_samples(int n, ShapeQuery query, long resolution,
                                            std::mt19937_64& rng, SampleBias bias) {
  if (n < 1) throw std::domain_error("random_shaped_samples: need n >= 1");
  if (resolution < 1) throw std::domain_error("random_shaped_samples: need resolution >= 1");
  switch (query) {
    case ShapeQuery::MonotoneIncreasing:
      return bias == SampleBias::BoundaryBiased
                 ? monotone_increasing_biased(n, resolution, rng)
                 : monotone_increasing_uniform(n, resolution, rng);
    case ShapeQuery::MonotoneDecreasing: {
      std::vector<Rational> inc = random_shaped_samples(n, ShapeQuery::MonotoneIncreasing,
                                                        resolution, rng, bias);
      std::reverse(inc.begin(), inc.end());
      return inc;
    }
    case ShapeQuery::Convex:
      return convex_samples(n, resolution, rng, bias);
    case ShapeQuery::Concave: {
      std::vector<Rational> convex = convex_samples(n, resolution, rng, bias);
      for (auto& v : convex) v = -v;
      return convex;
    }
  }
  throw std::logic_error("random_shaped_samples: bad query");
}

namespace {

std::optional<Certificate> refutation_for(const std::vector<Rational>& samples, int n,
                                          const OperatorKind& op, ShapeQuery query,
                                          int depth_cap) {
  OperatorOutput out = apply(FunctionSpec::grid(samples), n, op);
  BernsteinPoly poly = output_bernstein(out);
  if (coefficient_shape_test(poly, query)) return std::nullopt;
  Certificate cert = certify_shape(poly, query, depth_cap);
  if (cert.status == Certificate::Status::Refuted) return cert;
  return std::nullopt;
}

}  // namespace

std::optional<CounterexampleReport> find_counterexample(const SearchConfig& cfg) {
  if (cfg.budget < 1) throw std::domain_error("find_counterexample: need budget >= 1");
  if ((cfg.query == ShapeQuery::Convex || cfg.query == ShapeQuery::Concave) && cfg.n < 2)
    throw std::domain_error("find_counterexample: convexity queries need n >= 2");
  long trials = 0;
  for (const auto& candidate : cfg.seeded_candidates) {
    if (trials >= cfg.budget) break;
    ++trials;
    if (static_cast<int>(candidate.size()) != cfg.n + 1)
      throw std::domain_error("find_counterexample: seeded candidate has wrong length");
    if (auto cert = refutation_for(candidate, cfg.n, cfg.op, cfg.query, cfg.depth_cap)) {
      return CounterexampleReport{candidate, std::move(*cert), trials};
    }
  }
  while (trials < cfg.budget) {
    std::mt19937_64 rng(splitmix64(cfg.seed ^ (0x9E3779B97F4A7C15ull * static_cast<std::uint64_t>(trials + 1))));
    ++trials;
    std::vector<Rational> samples =
        random_shaped_samples(cfg.n, cfg.query, cfg.resolution, rng, cfg.bias);
    if (auto cert = refutation_for(samples, cfg.n, cfg.op, cfg.query, cfg.depth_cap)) {
      return CounterexampleReport{std::move(samples), std::move(*cert), trials};
    }
  }
  return std::nullopt;
}

bool KnownExamplesReport::all_ok() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const ExampleCheck& c) { return c.ok; });
}

namespace {

Enclosure abs_interval(const Rational& lo, const Rational& hi) {
  if (lo >= 0) return Enclosure(lo, hi, 1);
  if (hi <= 0) return Enclosure(-hi, -lo, 1);
  return Enclosure(Rational(0), std::max(Rational(-lo), hi), 1);
}

// dyadic bracket [a,b] with s(a) < 0 < s(b) around the single sign change
// of the second derivative; exact bisection
std::pair<Rational, Rational> inflection_bracket(const BernsteinPoly& second, int depth) {
  Rational a(0), b(1);
  Rational va = eval(second, a);
  Rational vb = eval(second, b);
  if (!(va < 0) || !(vb > 0))
    throw std::runtime_error("inflection_bracket: no sign change across [0,1]");
  for (int i = 0; i < depth; ++i) {
    Rational mid = (a + b) / 2;
    Rational vm = eval(second, mid);
    if (vm == 0) return {mid, mid};
    if (vm < 0) {
      a = mid;
    } else {
      b = mid;
    }
  }
  return {a, b};
}

std::vector<Rational> reference_counterexample_grid() {
  return {Rational(0),
          make_rational(50, 60),
          make_rational(56, 60),
          make_rational(57, 60),
          make_rational(58, 60),
          make_rational(59, 60),
          Rational(1)};
}

}  // namespace

Enclosure sup_grid_deviation(const BernsteinPoly& p, const FunctionSpec& f, int m,
                             unsigned bits) {
  if (m < 1) throw std::domain_error("sup_grid_deviation: need m >= 1");
  const std::vector<Rational> power = to_power_basis(p);
  Rational sup_lo(0), sup_hi(0);
  for (int j = 0; j <= m; ++j) {
    const Rational x = make_rational(j, m);
    const Rational v = eval_power(power, x);
    FunctionSpec::Value fv = f.at(x);
    Enclosure fe = fv.enclosure(bits);
    Enclosure dev = abs_interval(v - fe.upper, v - fe.lower);
    sup_lo = std::max(sup_lo, dev.lower);
    sup_hi = std::max(sup_hi, dev.upper);
  }
  return Enclosure(std::move(sup_lo), std::move(sup_hi), bits);
}

KnownExamplesReport verify_known_examples() {
  KnownExamplesReport report;
  auto add = [&report](const std::string& name, bool ok, std::string detail) {
    report.checks.push_back({name, ok, std::move(detail)});
  };

  // Reference counterexample: floor operator at n=6 on a monotone grid.
  {
    const std::vector<Rational> grid = reference_counterexample_grid();
    IntegerBernsteinPoly out =
        apply_integer(FunctionSpec::grid(grid), 6, RoundingMode::floor());
    const std::vector<Integer> expected{0, 5, 14, 19, 14, 5, 1};
    bool coeffs_ok = out.int_coeffs() == expected;
    std::string got;
    for (const auto& c : out.int_coeffs()) got += c.str() + " ";
    add("counterexample6-coefficients", coeffs_ok, "int_coeffs = " + got);

    BernsteinPoly deriv = derivative(to_bernstein(out));
    Rational at_07 = eval(deriv, make_rational(7, 10));
    bool deriv_ok = at_07 == make_rational(-73, 2000);
    add("counterexample6-derivative-at-7/10", deriv_ok, to_string(at_07));

    Certificate cert = certify_shape(to_bernstein(out), ShapeQuery::MonotoneIncreasing, 40);
    bool refuted = cert.status == Certificate::Status::Refuted;
    bool witness_ok = refuted && cert.witness_x && cert.witness_value &&
                      eval(deriv, *cert.witness_x) == *cert.witness_value &&
                      *cert.witness_value < 0;
    add("counterexample6-refuted", refuted && witness_ok,
        refuted ? "witness x = " + to_string(*cert.witness_x) + ", derivative = " +
                      to_string(*cert.witness_value)
                : std::string(to_string(cert.status)));
  }

  // (x+1)^5 satisfies the unit-slope grid condition; both integer
  // operators stay monotone at n = 5 and 10.
  for (int n : {5, 10}) {
    FunctionSpec f = FunctionSpec::power_shifted();
    std::vector<Rational> values;
    for (int k = 0; k <= n; ++k) values.push_back(*f.at(make_rational(k, n)).exact);
    HypothesisResult hyp = check_hypothesis(values, n, HypothesisId::Thm1m_a);
    add("power-shifted-hypothesis-n" + std::to_string(n), hyp.holds,
        hyp.holds ? "holds" : "violated at k = " + std::to_string(hyp.first_violation));
    for (OperatorKind op : {OperatorKind::floor_int(), OperatorKind::nearest_int()}) {
      Certificate cert = certify_shape(output_bernstein(apply(f, n, op)),
                                       ShapeQuery::MonotoneIncreasing, 40);
      add(std::string("power-shifted-certified-n") + std::to_string(n) +
              (op.family == OperatorFamily::FloorInt ? "-floor" : "-nearest"),
          cert.certified(), to_string(cert.status));
    }
  }

  // sqrt: concavity is refuted and the inflection point of the floor
  // approximant moves toward 1 as n grows.
  {
    FunctionSpec f = FunctionSpec::sqrt_fn();
    IntegerBernsteinPoly p5 = apply_integer(f, 5, RoundingMode::floor());
    IntegerBernsteinPoly p10 = apply_integer(f, 10, RoundingMode::floor());
    for (const auto& [n, poly] : {std::pair<int, const IntegerBernsteinPoly&>{5, p5},
                                  {10, p10}}) {
      Certificate cert = certify_shape(to_bernstein(poly), ShapeQuery::Concave, 40);
      add("sqrt-concavity-refuted-n" + std::to_string(n),
          cert.status == Certificate::Status::Refuted, to_string(cert.status));
    }
    report.bracket_n5 = inflection_bracket(second_derivative(to_bernstein(p5)), 14);
    report.bracket_n10 = inflection_bracket(second_derivative(to_bernstein(p10)), 14);
    bool moved_right = report.bracket_n10.first > report.bracket_n5.second;
    add("sqrt-inflection-moves-right", moved_right,
        "n=5 in [" + to_string(report.bracket_n5.first) + ", " +
            to_string(report.bracket_n5.second) + "], n=10 in [" +
            to_string(report.bracket_n10.first) + ", " +
            to_string(report.bracket_n10.second) + "]");

    IntegerBernsteinPoly p100 = apply_integer(f, 100, RoundingMode::floor());
    Enclosure sup10 = sup_grid_deviation(to_bernstein(p10), f, 100);
    Enclosure sup100 = sup_grid_deviation(to_bernstein(p100), f, 100);
    bool converged = sup100.upper < sup10.lower;
    add("sqrt-deviation-shrinks", converged,
        "sup|B~10 - sqrt| >= " + to_string(sup10.lower) +
            ", sup|B~100 - sqrt| <= " + to_string(sup100.upper));
  }

  return report;
}

}  // namespace shapebern
