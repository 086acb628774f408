#include "shapebern/json_io.hpp"

namespace shapebern {

namespace {

Json rational_strings(const std::vector<Rational>& values) {
  Json arr = Json::array();
  for (const auto& v : values) arr.push_back(to_string(v));
  return arr;
}

std::vector<Rational> rationals_from_array(const Json& arr) {
  if (!arr.is_array()) throw std::invalid_argument("expected an array of rational strings");
  std::vector<Rational> out;
  out.reserve(arr.size());
  for (const auto& item : arr) out.push_back(parse_rational(item.get<std::string>()));
  return out;
}

}  // namespace

Json to_json(const BernsteinPoly& p) {
  return Json{{"degree", p.degree()},
              {"basis", "bernstein"},
              {"coeffs", rational_strings(p.coeffs())}};
}

Json to_json(const IntegerBernsteinPoly& p) {
  Json coeffs = Json::array();
  for (const auto& c : p.int_coeffs()) coeffs.push_back(c.str());
  return Json{{"degree", p.degree()}, {"basis", "bernstein-integer"}, {"coeffs", coeffs}};
}

Json power_to_json(const std::vector<Rational>& power) {
  return Json{{"degree", static_cast<int>(power.size()) - 1},
              {"basis", "power"},
              {"coeffs", rational_strings(power)}};
}

BernsteinPoly polynomial_from_json(const Json& j) {
  const std::string basis = j.at("basis").get<std::string>();
  const int degree = j.at("degree").get<int>();
  std::vector<Rational> coeffs = rationals_from_array(j.at("coeffs"));
  if (static_cast<int>(coeffs.size()) != degree + 1)
    throw std::invalid_argument("polynomial: degree does not match coefficient count");
  if (basis == "bernstein") return BernsteinPoly(std::move(coeffs));
  if (basis == "power") return from_power_basis(coeffs, degree);
  if (basis == "bernstein-integer") {
    std::vector<Integer> ints;
    ints.reserve(coeffs.size());
    for (const auto& c : coeffs) {
      if (!is_integer(c))
        throw std::invalid_argument("bernstein-integer: non-integer coefficient");
      ints.push_back(numerator(c));
    }
    return to_bernstein(IntegerBernsteinPoly(std::move(ints)));
  }
  throw std::invalid_argument("unknown basis '" + basis + "'");
}

Json to_json(const Certificate& cert) {
  Json j{{"status", to_string(cert.status)}, {"depth", cert.depth}};
  if (cert.query) j["query"] = to_string(*cert.query);
  if (cert.status == Certificate::Status::Refuted) {
    j["witness"] = Json{{"x", to_string(*cert.witness_x)},
                        {"value", to_string(*cert.witness_value)}};
  }
  return j;
}

Json samples_to_json(const std::vector<Rational>& values) {
  return Json{{"n", static_cast<int>(values.size()) - 1},
              {"values", rational_strings(values)}};
}

std::vector<Rational> samples_from_json(const Json& j) {
  std::vector<Rational> values = rationals_from_array(j.at("values"));
  if (j.contains("n") && j.at("n").get<int>() != static_cast<int>(values.size()) - 1)
    throw std::invalid_argument("samples: n does not match value count");
  return values;
}

Json to_json(const CorrectionTable& table) {
  Json entries = Json::object();
  for (int k = table.k_min(); k <= table.k_max(); ++k) {
    entries[std::to_string(k)] = to_string(table.at(k));
  }
  return Json{{"kind", to_string(table.kind())}, {"n", table.n()}, {"entries", entries}};
}

const char* to_string(OperatorFamily family) {
  switch (family) {
    case OperatorFamily::Classical: return "classical";
    case OperatorFamily::FloorInt: return "floor";
    case OperatorFamily::NearestInt: return "nearest";
  }
  return "?";
}

const char* to_string(TiePolicy tie) {
  switch (tie) {
    case TiePolicy::HalfUp: return "half-up";
    case TiePolicy::HalfDown: return "half-down";
    case TiePolicy::HalfEven: return "half-even";
  }
  return "?";
}

TiePolicy tie_policy_from_string(std::string_view tie) {
  if (tie == "half-up") return TiePolicy::HalfUp;
  if (tie == "half-down") return TiePolicy::HalfDown;
  if (tie == "half-even") return TiePolicy::HalfEven;
  throw std::invalid_argument("unknown tie policy '" + std::string(tie) + "'");
}

OperatorKind operator_kind_from_strings(std::string_view op, std::string_view tie) {
  if (op == "classical") return OperatorKind::classical();
  if (op == "floor") return OperatorKind::floor_int();
  if (op == "nearest") return OperatorKind::nearest_int(tie_policy_from_string(tie));
  throw std::invalid_argument("unknown operator '" + std::string(op) + "'");
}

Json to_json(const SearchConfig& cfg) {
  Json j{{"n", cfg.n},
         {"op", to_string(cfg.op.family)},
         {"query", to_string(cfg.query)},
         {"budget", cfg.budget},
         {"resolution", cfg.resolution},
         {"seed", cfg.seed},
         {"mode", cfg.bias == SampleBias::BoundaryBiased ? "biased" : "uniform"},
         {"depth_cap", cfg.depth_cap}};
  if (cfg.op.family == OperatorFamily::NearestInt) j["tie"] = to_string(cfg.op.tie);
  return j;
}

Json search_report_json(const SearchConfig& cfg,
                        const std::optional<CounterexampleReport>& report) {
  Json j{{"config", to_json(cfg)}, {"found", report.has_value()}};
  if (report) {
    j["trials_used"] = report->trials_used;
    j["samples"] = rational_strings(report->samples);
    j["certificate"] = to_json(report->certificate);
  } else {
    j["trials_used"] = cfg.budget;
    j["note"] =
        "budget exhausted without a counterexample; this is evidence of "
        "preservation at this degree, not a proof";
  }
  return j;
}

}  // namespace shapebern
