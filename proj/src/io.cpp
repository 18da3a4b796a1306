#include "quadorder/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace quadorder::io {

namespace {

double number(const json& j, const char* what) {
  if (!j.is_number()) throw ParseError(std::string("expected a number for ") + what);
  return j.get<double>();
}

Interval interval_from(const json& j, const char* what) {
  if (!j.is_array() || j.size() != 2) {
    throw ParseError(std::string(what) + " must be a two-element array");
  }
  try {
    return Interval(number(j[0], what), number(j[1], what));
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
}

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

TestFunction::Kind kind_from(const std::string& s) {
  if (s == "monomial") return TestFunction::Kind::Monomial;
  if (s == "truncated_power") return TestFunction::Kind::TruncatedPower;
  if (s == "exponential") return TestFunction::Kind::Exponential;
  throw ParseError("unknown test function kind \"" + s + "\"");
}

std::string kind_name(TestFunction::Kind k) {
  switch (k) {
  case TestFunction::Kind::Monomial: return "monomial";
  case TestFunction::Kind::TruncatedPower: return "truncated_power";
  case TestFunction::Kind::Exponential: return "exponential";
  }
  return "monomial";
}

} // namespace

json to_json(const Measure& mu) {
  json atoms = json::array();
  for (const Atom& a : mu.atoms()) atoms.push_back({{"x", a.x}, {"w", a.w}});
  json pieces = json::array();
  for (const DensityPiece& p : mu.pieces()) {
    pieces.push_back({{"support", {p.support().a(), p.support().b()}}, {"coeffs", p.coeffs()}});
  }
  return {{"interval", {mu.interval().a(), mu.interval().b()}}, {"atoms", atoms}, {"pieces", pieces}};
}

Measure measure_from_json(const json& j) {
  const Interval interval = interval_from(field(j, "interval"), "interval");
  std::vector<Atom> atoms;
  std::vector<DensityPiece> pieces;
  try {
    if (j.contains("atoms")) {
      if (!j["atoms"].is_array()) throw ParseError("\"atoms\" must be an array");
      for (const json& a : j["atoms"]) {
        atoms.push_back({number(field(a, "x"), "atom x"), number(field(a, "w"), "atom w")});
      }
    }
    if (j.contains("pieces")) {
      if (!j["pieces"].is_array()) throw ParseError("\"pieces\" must be an array");
      for (const json& p : j["pieces"]) {
        const Interval support = interval_from(field(p, "support"), "piece support");
        const json& c = field(p, "coeffs");
        if (!c.is_array()) throw ParseError("\"coeffs\" must be an array");
        std::vector<double> coeffs;
        for (const json& v : c) coeffs.push_back(number(v, "coefficient"));
        pieces.emplace_back(support, std::move(coeffs));
      }
    }
    return Measure(interval, std::move(atoms), std::move(pieces));
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
}

json to_json(const QuadratureRule& rule) {
  json j = to_json(from_rule(rule));
  j["family"] = to_string(rule.family());
  j["exactness_degree"] = rule.exactness_degree();
  return j;
}

namespace {

QuadratureRule parse_rule(const json& j) {
  const Measure mu = measure_from_json(j);
  if (!mu.pieces().empty()) throw ParseError("a quadrature rule cannot have density pieces");
  RuleFamily family = RuleFamily::Custom;
  if (j.contains("family")) {
    const auto f = parse_family(j["family"].get<std::string>());
    if (!f) throw ParseError("unknown rule family");
    family = *f;
  }
  std::vector<double> nodes, weights;
  for (const Atom& a : mu.atoms()) {
    nodes.push_back(a.x);
    weights.push_back(a.w);
  }
  std::optional<int> degree;
  if (j.contains("exactness_degree") && family != RuleFamily::Custom) {
    degree = j["exactness_degree"].get<int>();
  }
  return QuadratureRule(family, mu.interval(), std::move(nodes), std::move(weights), degree);
}

TestFunction parse_test_function(const json& j);

} // namespace

QuadratureRule rule_from_json(const json& j) {
  try {
    return parse_rule(j);
  } catch (const json::exception& e) {
    throw ParseError(e.what());
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
}

json to_json(const TestFunction& f) {
  json params;
  switch (f.kind) {
  case TestFunction::Kind::Monomial: params = {{"degree", f.degree}, {"sign", f.sign}}; break;
  case TestFunction::Kind::TruncatedPower: params = {{"degree", f.degree}, {"knot", f.knot}}; break;
  case TestFunction::Kind::Exponential: params = {{"rate", f.rate}}; break;
  }
  return {{"kind", kind_name(f.kind)}, {"params", params}, {"convexity_order", f.convexity_order}};
}

TestFunction test_function_from_json(const json& j) {
  try {
    return parse_test_function(j);
  } catch (const json::exception& e) {
    throw ParseError(e.what());
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
}

namespace {

TestFunction parse_test_function(const json& j) {
  const TestFunction::Kind kind = kind_from(field(j, "kind").get<std::string>());
  const json& p = field(j, "params");
  const int order = j.value("convexity_order", 0);
  switch (kind) {
  case TestFunction::Kind::Monomial:
    return TestFunction::monomial(field(p, "degree").get<int>(), order, p.value("sign", 1.0));
  case TestFunction::Kind::TruncatedPower:
    return TestFunction::truncated_power(field(p, "degree").get<int>(), number(field(p, "knot"), "knot"));
  case TestFunction::Kind::Exponential:
    return TestFunction::exponential(number(field(p, "rate"), "rate"), order);
  }
  throw ParseError("unknown test function kind");
}

} // namespace

json to_json(const CrossingReport& report) {
  json signs = json::array();
  for (Sign s : report.sign_sequence) signs.push_back(to_string(s));
  return {{"crossings", report.crossings},
          {"count", report.count()},
          {"initial_sign", to_string(report.initial_sign)},
          {"sign_sequence", signs}};
}

json to_json(const Witness& w) {
  return {{"function", to_json(w.function)},
          {"description", w.function.describe()},
          {"refutes", to_string(w.refutes)},
          {"violation", w.violation}};
}

json to_json(const OrderCertificate& cert) {
  json witnesses = json::array();
  for (const Witness& w : cert.witnesses) witnesses.push_back(to_json(w));
  return {{"verdict", to_string(cert.verdict)},
          {"s", cert.s},
          {"direction", to_string(cert.direction)},
          {"equal_measures", cert.equal_measures},
          {"moment_residuals", cert.moment_residuals},
          {"crossing_report", to_json(cert.crossing_report)},
          {"witnesses", witnesses},
          {"notes", cert.notes},
          {"convention", kSignConvention}};
}

json to_json(const ComparabilityReport& report) {
  json witnesses = json::array();
  for (const Witness& w : report.witnesses) witnesses.push_back(to_json(w));
  json j = {{"verdict", to_string(report.verdict)},
            {"shared_moment_degree", report.shared_degree},
            {"witnesses", witnesses}};
  j["failing_moment"] = report.failing_moment ? json(*report.failing_moment) : json(nullptr);
  return j;
}

json to_json(const SpotCheck& check) {
  return {{"function", to_json(check.function)},
          {"description", check.function.describe()},
          {"lower", check.lower},
          {"middle", check.middle},
          {"upper", check.upper},
          {"violation", check.violation()}};
}

json to_json(const SandwichResult& result) {
  json checks = json::array();
  for (const SpotCheck& c : result.spot_checks) checks.push_back(to_json(c));
  return {{"n", result.n},
          {"seed", result.seed},
          {"certified", result.certified()},
          {"lower_rule", to_json(result.lower_rule)},
          {"upper_rule", to_json(result.upper_rule)},
          {"lower_certificate", to_json(result.lower_certificate)},
          {"upper_certificate", to_json(result.upper_certificate)},
          {"max_violation", result.max_violation()},
          {"spot_checks", checks}};
}

json to_json(const CorpusReport& report) {
  json items = json::array();
  for (const CorpusItem& item : report.items) {
    items.push_back({{"index", item.index},
                     {"seed", item.seed},
                     {"lower", to_string(item.lower)},
                     {"upper", to_string(item.upper)},
                     {"max_violation", item.max_violation},
                     {"violations", item.violations}});
  }
  return {{"n", report.n},
          {"seed", report.seed},
          {"interval", {report.interval.a(), report.interval.b()}},
          {"certified", report.certified_count()},
          {"total_violations", report.total_violations()},
          {"items", items}};
}

Measure read_measure(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
  return measure_from_json(j);
}

void write_measure(const std::filesystem::path& path, const Measure& mu) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write " + path.string());
  out << to_json(mu).dump(2) << '\n';
}

std::string format17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

} // namespace quadorder::io
