// The classical Bernstein operator and its two integer modifications
// (floor and nearest-integer), applied to a function given either as exact
// grid samples or as a built-in with enclosure evaluation.

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "shapebern/bernstein.hpp"
#include "shapebern/rational.hpp"

namespace shapebern {

enum class OperatorFamily { Classical, FloorInt, NearestInt };

struct OperatorKind {
  OperatorFamily family = OperatorFamily::FloorInt;
  TiePolicy tie = TiePolicy::HalfUp;  // NearestInt only

  static OperatorKind classical() { return {OperatorFamily::Classical, TiePolicy::HalfUp}; }
  static OperatorKind floor_int() { return {OperatorFamily::FloorInt, TiePolicy::HalfUp}; }
  static OperatorKind nearest_int(TiePolicy tie = TiePolicy::HalfUp) {
    return {OperatorFamily::NearestInt, tie};
  }
};

// Raised when an enclosure cannot be separated from a rounding boundary
// within the precision cap; carries the offending sample index.
struct UndecidableRounding : std::runtime_error {
  UndecidableRounding(int k, const std::string& what) : std::runtime_error(what), index(k) {}
  int index;
};

struct EvaluationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A function on [0,1]: exact grid samples at k/n, or a built-in evaluated
// either exactly (when the value is rational) or through refinable
// enclosures.
class FunctionSpec {
 public:
  // Exact value or a refinable enclosure of f(x); exactly one is active.
  struct Value {
    std::optional<Rational> exact;
    EnclosureFn approx;

    bool is_exact() const { return exact.has_value(); }
    Enclosure enclosure(unsigned bits) const;
  };

  static FunctionSpec grid(std::vector<Rational> values);  // degree = size-1
  static FunctionSpec sqrt_fn();
  static FunctionSpec power_shifted();  // (x+1)^5
  static FunctionSpec linear(Rational a, Rational b);  // a*x + b
  static FunctionSpec entropy();       // 6(x ln x + (1-x) ln(1-x))
  static FunctionSpec polynomial(std::vector<Rational> power_coeffs);

  // Built-in selectors: "sqrt", "(x+1)^5", "linear:a,b", "poly:a0,a1,...",
  // "entropy". Throws std::invalid_argument otherwise.
  static FunctionSpec parse(std::string_view selector);

  Value at(const Rational& x) const;

  bool is_grid() const { return kind_ == Kind::Grid; }
  int grid_degree() const;  // -1 when not a grid
  const std::vector<Rational>& grid_values() const;
  std::string name() const;

 private:
  enum class Kind { Grid, Sqrt, PowerShifted, Linear, Entropy, Polynomial };
  FunctionSpec(Kind kind, std::vector<Rational> data) : kind_(kind), data_(std::move(data)) {}

  Kind kind_;
  std::vector<Rational> data_;  // grid values, poly coefficients, or {a,b}
};

// f(k/n) for k = 0..n. Grid specs require n to match their own degree.
std::vector<FunctionSpec::Value> sample(const FunctionSpec& f, int n);

// Classical control values b_k = f(k/n); every sample must be exact.
BernsteinPoly apply_classical(const FunctionSpec& f, int n);

// Integer control weights c_k = round(f(k/n) * C(n,k)). Requires integer
// f(0), f(1). Enclosure samples are refined up to precision_cap before
// rounding; an unseparable boundary raises UndecidableRounding.
IntegerBernsteinPoly apply_integer(const FunctionSpec& f, int n, const RoundingMode& mode,
                                   unsigned precision_cap = kDefaultPrecisionCap);

using OperatorOutput = std::variant<BernsteinPoly, IntegerBernsteinPoly>;
OperatorOutput apply(const FunctionSpec& f, int n, const OperatorKind& kind,
                     unsigned precision_cap = kDefaultPrecisionCap);

// b_k = c_k / C(n,k).
std::vector<Rational> control_values(const IntegerBernsteinPoly& p);

// Bernstein form of the operator output, whichever variant it is.
BernsteinPoly output_bernstein(const OperatorOutput& out);

}  // namespace shapebern
