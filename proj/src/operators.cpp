#include "shapebern/operators.hpp"

#include <algorithm>

#include "shapebern/corrections.hpp"

namespace shapebern {

Enclosure FunctionSpec::Value::enclosure(unsigned bits) const {
  if (exact) return Enclosure(*exact, *exact, std::max(bits, 1u));
  return approx(bits);
}

FunctionSpec FunctionSpec::grid(std::vector<Rational> values) {
  if (values.size() < 2) throw std::invalid_argument("grid: need at least two samples");
  return FunctionSpec(Kind::Grid, std::move(values));
}

FunctionSpec FunctionSpec::sqrt_fn() { return FunctionSpec(Kind::Sqrt, {}); }

FunctionSpec FunctionSpec::power_shifted() { return FunctionSpec(Kind::PowerShifted, {}); }

FunctionSpec FunctionSpec::linear(Rational a, Rational b) {
  return FunctionSpec(Kind::Linear, {std::move(a), std::move(b)});
}

FunctionSpec FunctionSpec::entropy() { return FunctionSpec(Kind::Entropy, {}); }

FunctionSpec FunctionSpec::polynomial(std::vector<Rational> power_coeffs) {
  if (power_coeffs.empty()) throw std::invalid_argument("polynomial: no coefficients");
  return FunctionSpec(Kind::Polynomial, std::move(power_coeffs));
}

namespace {

std::vector<Rational> parse_rational_list(std::string_view text) {
  std::vector<Rational> out;
  size_t start = 0;
  while (start <= text.size()) {
    size_t comma = text.find(',', start);
    std::string_view item = (comma == std::string_view::npos)
                                ? text.substr(start)
                                : text.substr(start, comma - start);
    out.push_back(parse_rational(item));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

}  // namespace

FunctionSpec FunctionSpec::parse(std::string_view selector) {
  if (selector == "sqrt") return sqrt_fn();
  if (selector == "(x+1)^5") return power_shifted();
  if (selector == "entropy") return entropy();
  constexpr std::string_view kLinear = "linear:";
  if (selector.substr(0, kLinear.size()) == kLinear) {
    auto parts = parse_rational_list(selector.substr(kLinear.size()));
    if (parts.size() != 2) throw std::invalid_argument("linear: expected 'linear:a,b'");
    return linear(std::move(parts[0]), std::move(parts[1]));
  }
  constexpr std::string_view kPoly = "poly:";
  if (selector.substr(0, kPoly.size()) == kPoly) {
    return polynomial(parse_rational_list(selector.substr(kPoly.size())));
  }
  throw std::invalid_argument("unknown function selector '" + std::string(selector) + "'");
}

int FunctionSpec::grid_degree() const {
  return kind_ == Kind::Grid ? static_cast<int>(data_.size()) - 1 : -1;
}

const std::vector<Rational>& FunctionSpec::grid_values() const {
  if (kind_ != Kind::Grid) throw std::logic_error("grid_values: not a grid spec");
  return data_;
}

std::string FunctionSpec::name() const {
  switch (kind_) {
    case Kind::Grid: return "grid";
    case Kind::Sqrt: return "sqrt";
    case Kind::PowerShifted: return "(x+1)^5";
    case Kind::Linear: return "linear:" + shapebern::to_string(data_[0]) + "," +
                              shapebern::to_string(data_[1]);
    case Kind::Entropy: return "entropy";
    case Kind::Polynomial: return "poly";
  }
  return "?";
}

FunctionSpec::Value FunctionSpec::at(const Rational& x) const {
  Value v;
  switch (kind_) {
    case Kind::Grid: {
      const int n = grid_degree();
      Rational kq = x * n;
      if (!is_integer(kq) || kq < 0 || kq > n)
        throw EvaluationError("grid function defined only at k/" + std::to_string(n) +
                              ", got x = " + shapebern::to_string(x));
      v.exact = data_[static_cast<size_t>(numerator(kq).convert_to<long>())];
      return v;
    }
    case Kind::Sqrt: {
      if (x < 0) throw EvaluationError("sqrt: negative argument");
      if (auto e = exact_sqrt(x)) {
        v.exact = std::move(*e);
        return v;
      }
      Rational arg = x;
      v.approx = [arg](unsigned b) { return sqrt_enclosure(arg, b); };
      return v;
    }
    case Kind::PowerShifted:
      v.exact = rational_pow(x + 1, 5);
      return v;
    case Kind::Linear:
      v.exact = data_[0] * x + data_[1];
      return v;
    case Kind::Entropy: {
      if (x < 0 || x > 1) throw EvaluationError("entropy: argument outside [0,1]");
      if (x == 0 || x == 1) {
        v.exact = Rational(0);
        return v;
      }
      Rational arg = x;
      v.approx = [arg](unsigned b) { return entropy_phi(arg, b); };
      return v;
    }
    case Kind::Polynomial:
      v.exact = eval_power(data_, x);
      return v;
  }
  throw std::logic_error("FunctionSpec::at: bad kind");
}

std::vector<FunctionSpec::Value> sample(const FunctionSpec& f, int n) {
  if (n < 1) throw std::domain_error("sample: need n >= 1");
  if (f.is_grid() && f.grid_degree() != n)
    throw std::domain_error("sample: grid has degree " + std::to_string(f.grid_degree()) +
                            ", requested n = " + std::to_string(n));
  std::vector<FunctionSpec::Value> values;
  values.reserve(static_cast<size_t>(n) + 1);
  for (int k = 0; k <= n; ++k) {
    values.push_back(f.at(make_rational(k, n)));
  }
  return values;
}

namespace {

void require_integer_endpoints(const std::vector<FunctionSpec::Value>& values) {
  const FunctionSpec::Value& first = values.front();
  const FunctionSpec::Value& last = values.back();
  if (!first.is_exact() || !last.is_exact() || !is_integer(*first.exact) ||
      !is_integer(*last.exact)) {
    throw std::domain_error(
        "integer Bernstein operators require integer f(0) and f(1)");
  }
}

}  // namespace

BernsteinPoly apply_classical(const FunctionSpec& f, int n) {
  auto values = sample(f, n);
  std::vector<Rational> coeffs;
  coeffs.reserve(values.size());
  for (size_t k = 0; k < values.size(); ++k) {
    if (!values[k].is_exact())
      throw EvaluationError("classical operator needs exact samples; f(" +
                            std::to_string(k) + "/" + std::to_string(n) +
                            ") is not a representable rational");
    coeffs.push_back(*values[k].exact);
  }
  return BernsteinPoly(std::move(coeffs));
}

IntegerBernsteinPoly apply_integer(const FunctionSpec& f, int n, const RoundingMode& mode,
                                   unsigned precision_cap) {
  auto values = sample(f, n);
  require_integer_endpoints(values);
  const std::vector<Integer> row = binomial_row(n);
  std::vector<Integer> coeffs(values.size());
  for (size_t k = 0; k < values.size(); ++k) {
    const Integer& binom = row[k];
    if (values[k].is_exact()) {
      coeffs[k] = round_rational(*values[k].exact * binom, mode);
      continue;
    }
    EnclosureFn scaled = [fn = values[k].approx, binom](unsigned bits) {
      Enclosure e = fn(bits);
      return Enclosure(e.lower * binom, e.upper * binom, e.precision_bits);
    };
    unsigned start_bits = std::min(64u, std::max(precision_cap, 1u));
    auto rounded = round_enclosure(scaled(start_bits), mode, scaled, precision_cap);
    if (!rounded)
      throw UndecidableRounding(static_cast<int>(k),
                                "sample " + std::to_string(k) + "/" + std::to_string(n) +
                                    " cannot be separated from a rounding boundary "
                                    "within the precision cap");
    coeffs[k] = std::move(*rounded);
  }
  return IntegerBernsteinPoly(std::move(coeffs));
}

OperatorOutput apply(const FunctionSpec& f, int n, const OperatorKind& kind,
                     unsigned precision_cap) {
  switch (kind.family) {
    case OperatorFamily::Classical:
      return apply_classical(f, n);
    case OperatorFamily::FloorInt:
      return apply_integer(f, n, RoundingMode::floor(), precision_cap);
    case OperatorFamily::NearestInt:
      return apply_integer(f, n, RoundingMode::nearest(kind.tie), precision_cap);
  }
  throw std::logic_error("apply: bad operator kind");
}

std::vector<Rational> control_values(const IntegerBernsteinPoly& p) {
  return to_bernstein(p).coeffs();
}

BernsteinPoly output_bernstein(const OperatorOutput& out) {
  if (const auto* poly = std::get_if<BernsteinPoly>(&out)) return *poly;
  return to_bernstein(std::get<IntegerBernsteinPoly>(out));
}

}  // namespace shapebern
