// JSON wire formats. Every numeric value is carried as an exact rational
// string, so files round-trip losslessly.
//
//   polynomial:  {"degree": n, "basis": "bernstein" | "bernstein-integer"
//                 | "power", "coeffs": ["0", "1/3", ...]}
//   samples:     {"n": n, "values": ["0", "50/60", ...]}
//   certificate: {"query": ..., "status": ..., "depth": d,
//                 "witness": {"x": ..., "value": ...}}        (refuted only)
//   table:       {"kind": ..., "n": n, "entries": {"0": "0", ...}}
//   report:      {"config": {...}, "found": bool, "trials_used": t,
//                 "samples": [...], "certificate": {...}}

#pragma once

#include <json.hpp>

#include "shapebern/corrections.hpp"
#include "shapebern/search.hpp"
#include "shapebern/shape.hpp"

namespace shapebern {

using Json = nlohmann::json;

Json to_json(const BernsteinPoly& p);
Json to_json(const IntegerBernsteinPoly& p);
Json power_to_json(const std::vector<Rational>& power);

// Accepts any of the three bases and yields the Bernstein form.
BernsteinPoly polynomial_from_json(const Json& j);

Json to_json(const Certificate& cert);

Json samples_to_json(const std::vector<Rational>& values);
std::vector<Rational> samples_from_json(const Json& j);

Json to_json(const CorrectionTable& table);

Json to_json(const SearchConfig& cfg);
Json search_report_json(const SearchConfig& cfg,
                        const std::optional<CounterexampleReport>& report);

const char* to_string(OperatorFamily family);
const char* to_string(TiePolicy tie);
OperatorKind operator_kind_from_strings(std::string_view op, std::string_view tie);
TiePolicy tie_policy_from_string(std::string_view tie);

}  // namespace shapebern
