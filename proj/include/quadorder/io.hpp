#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "quadorder/convexity.hpp"
#include "quadorder/measure.hpp"
#include "quadorder/ordering.hpp"
#include "quadorder/rules.hpp"
#include "quadorder/sandwich.hpp"

namespace quadorder::io {

using nlohmann::json;

/// Malformed or unreadable input.
class ParseError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Measure schema:
//   {"interval":[a,b], "atoms":[{"x":..,"w":..}], "pieces":[{"support":[c,d],"coeffs":[..]}]}
// Doubles are written in shortest round-trip form, so write/read is bit-exact.
json to_json(const Measure& mu);
Measure measure_from_json(const json& j);

/// Measure schema plus "family" and "exactness_degree".
json to_json(const QuadratureRule& rule);
QuadratureRule rule_from_json(const json& j);

json to_json(const TestFunction& f);
TestFunction test_function_from_json(const json& j);

json to_json(const CrossingReport& report);
json to_json(const Witness& w);
json to_json(const OrderCertificate& cert);
json to_json(const ComparabilityReport& report);
json to_json(const SpotCheck& check);
json to_json(const SandwichResult& result);
json to_json(const CorpusReport& report);

Measure read_measure(const std::filesystem::path& path);
void write_measure(const std::filesystem::path& path, const Measure& mu);

/// 17 significant digits, as used by the CLI tables.
std::string format17(double x);

} // namespace quadorder::io
