// Randomized, seed-reproducible search for shape-preservation
// counterexamples, plus verification of the bundled reference examples
// (the degree-6 monotone counterexample, the (x+1)^5 approximants and the
// sqrt inflection behaviour).

#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "shapebern/operators.hpp"
#include "shapebern/shape.hpp"

namespace shapebern {

enum class SampleBias {
  Uniform,
  // Values pushed toward rounding thresholds (tiny grid increments under a
  // large initial jump); counterexamples live where the floor drops are
  // maximal.
  BoundaryBiased,
};

struct SearchConfig {
  int n = 6;
  OperatorKind op = OperatorKind::floor_int();
  ShapeQuery query = ShapeQuery::MonotoneIncreasing;
  long budget = 100000;
  long resolution = 60;  // denominator bound for sample values
  std::uint64_t seed = 0;
  SampleBias bias = SampleBias::BoundaryBiased;
  int depth_cap = 24;
  // Explicit grids tried before any random trial (and counted against the
  // budget); lets a caller seed the search with known candidates.
  std::vector<std::vector<Rational>> seeded_candidates;
};

struct CounterexampleReport {
  std::vector<Rational> samples;
  Certificate certificate;  // Refuted, with an exact witness
  long trials_used = 0;
};

// Grid values f(k/n) with integer endpoints that satisfy the query exactly
// at grid level, all denominators <= resolution.
std::vector<Rational> random_shaped_samples(int n, ShapeQuery query, long resolution,
                                            std::mt19937_64& rng,
                                            SampleBias bias = SampleBias::Uniform);

// Deterministic given cfg.seed: per-trial generators are split from the
// seed by trial index, so results do not depend on evaluation order.
std::optional<CounterexampleReport> find_counterexample(const SearchConfig& cfg);

struct ExampleCheck {
  std::string name;
  bool ok = false;
  std::string detail;
};

struct KnownExamplesReport {
  std::vector<ExampleCheck> checks;
  // dyadic brackets around the sqrt approximant inflection points
  std::pair<Rational, Rational> bracket_n5{Rational(0), Rational(0)};
  std::pair<Rational, Rational> bracket_n10{Rational(0), Rational(0)};

  bool all_ok() const;
};

KnownExamplesReport verify_known_examples();

// Enclosure of max over the grid {j/m} of |p(j/m) - f(j/m)|.
Enclosure sup_grid_deviation(const BernsteinPoly& p, const FunctionSpec& f, int m,
                             unsigned bits = 192);

std::uint64_t splitmix64(std::uint64_t state);

}  // namespace shapebern
