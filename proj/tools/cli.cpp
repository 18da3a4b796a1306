#include "cli.hpp"

#include <algorithm>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "quadorder/io.hpp"
#include "quadorder/measure.hpp"
#include "quadorder/ordering.hpp"
#include "quadorder/rules.hpp"
#include "quadorder/sandwich.hpp"

namespace quadorder::cli {

namespace {

using io::format17;
using io::json;
using io::ParseError;

constexpr int kPlotPoints = 2048;

struct Common {
  bool json = false;
  std::string interval = "0,1";
};

void add_common(CLI::App* sub, Common& common) {
  sub->add_flag("--json", common.json, "Machine-readable JSON output");
  sub->add_option("--interval", common.interval, "Interval a,b for inline measures and rules")
      ->capture_default_str();
}

double parse_double(std::string_view s, const std::string& what) {
  double v = 0.0;
  const auto* end = s.data() + s.size();
  const auto res = std::from_chars(s.data(), end, v);
  if (res.ec != std::errc() || res.ptr != end) throw CLI::ValidationError(what, "not a number");
  return v;
}

Interval parse_interval(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) throw CLI::ValidationError("--interval", "expected a,b");
  const double a = parse_double(std::string_view(text).substr(0, comma), "--interval");
  const double b = parse_double(std::string_view(text).substr(comma + 1), "--interval");
  if (!(a < b)) throw CLI::ValidationError("--interval", "need a < b");
  return Interval(a, b);
}

/// "family:points" (chebyshev3 may omit the count).
std::optional<QuadratureRule> parse_inline_rule(const std::string& spec, const Interval& interval) {
  const auto colon = spec.find(':');
  const auto family = parse_family(spec.substr(0, colon));
  if (!family || *family == RuleFamily::Custom) return std::nullopt;
  int points = 3;
  if (colon != std::string::npos) {
    const std::string count = spec.substr(colon + 1);
    const auto res = std::from_chars(count.data(), count.data() + count.size(), points);
    if (res.ec != std::errc() || res.ptr != count.data() + count.size()) return std::nullopt;
  } else if (*family != RuleFamily::Chebyshev3) {
    return std::nullopt;
  }
  return make_rule(*family, points, interval);
}

/// A measure source is a JSON file, "uniform", "dirac:x" or an inline rule.
Measure load_measure(const std::string& source, const Interval& interval) {
  if (std::filesystem::exists(source)) return io::read_measure(source);
  if (source == "uniform") return uniform(interval);
  if (source.rfind("dirac:", 0) == 0) {
    try {
      return dirac(interval, parse_double(source.substr(6), "dirac"));
    } catch (const std::exception& e) {
      throw ParseError("bad point mass \"" + source + "\": " + e.what());
    }
  }
  if (auto rule = parse_inline_rule(source, interval)) return from_rule(*rule);
  throw ParseError("cannot open \"" + source + "\" (not a file, \"uniform\", \"dirac:x\" or family:points)");
}

void require_same_interval(const Measure& a, const Measure& b) {
  if (!(a.interval() == b.interval())) {
    throw ParseError("the two measures live on different intervals");
  }
}

int verdict_code(Verdict v) {
  switch (v) {
  case Verdict::Certified: return kCertified;
  case Verdict::Refuted: return kRefuted;
  case Verdict::Inconclusive: return kInconclusive;
  }
  return kInconclusive;
}

std::string interval_text(const Interval& I) {
  return "[" + format17(I.a()) + ", " + format17(I.b()) + "]";
}

void print_row(std::ostream& out, std::initializer_list<std::string> cells) {
  std::size_t i = 0;
  for (const std::string& c : cells) {
    if (i > 0) out << "  ";
    if (++i < cells.size()) {
      out << std::left << std::setw(24) << c;
    } else {
      out << c;
    }
  }
  out << '\n';
}

void print_crossings(std::ostream& out, const CrossingReport& r) {
  out << "crossings: " << r.count() << '\n';
  out << "initial sign (F_second - F_first): " << to_string(r.initial_sign) << '\n';
  for (double x : r.crossings) out << "  " << format17(x) << '\n';
}

void print_certificate(std::ostream& out, const OrderCertificate& c) {
  out << "verdict: " << to_string(c.verdict) << '\n';
  out << "direction: " << to_string(c.direction) << (c.equal_measures ? " (and reverse; equal measures)" : "")
      << '\n';
  out << "order: " << c.s << '\n';
  out << "moment residuals (first - second):";
  for (double r : c.moment_residuals) out << ' ' << format17(r);
  out << '\n';
  print_crossings(out, c.crossing_report);
  for (const Witness& w : c.witnesses) {
    out << "witness: " << w.function.describe() << " breaks " << to_string(w.refutes) << " by "
        << format17(w.violation) << '\n';
  }
  out << "notes: " << c.notes << '\n';
  out << "convention: " << kSignConvention << '\n';
}

void write_plot_data(const std::string& path, const Measure& first, const Measure& second,
                     const CrossingReport& report) {
  std::ofstream csv(path);
  if (!csv) throw ParseError("cannot write " + path);
  struct Row {
    double x;
    bool crossing;
  };
  std::vector<Row> rows;
  for (const CdfSample& s : sample_cdfs(first, second, kPlotPoints)) rows.push_back({s.x, false});
  for (double x : report.crossings) rows.push_back({x, true});
  std::stable_sort(rows.begin(), rows.end(), [](const Row& l, const Row& r) { return l.x < r.x; });
  csv << "x,F1,F2,diff,is_crossing\n";
  for (const Row& row : rows) {
    const double f1 = first.cdf(row.x);
    const double f2 = second.cdf(row.x);
    csv << format17(row.x) << ',' << format17(f1) << ',' << format17(f2) << ',' << format17(f2 - f1)
        << ',' << (row.crossing ? 1 : 0) << '\n';
  }
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Quadrature rules, convex stochastic orders and n-convex sandwich bounds",
               "quadorder"};
  app.require_subcommand(1);

  Common common;

  // rule
  std::string family_name;
  int points = 0;
  CLI::App* rule_cmd = app.add_subcommand("rule", "Print a quadrature rule");
  rule_cmd->add_option("--family", family_name,
                       "gauss | lobatto | radau-left | radau-right | chebyshev3")
      ->required();
  rule_cmd->add_option("--points", points, "Number of nodes");
  add_common(rule_cmd, common);

  // moments
  std::string measure_src;
  int max_k = 8;
  CLI::App* moments_cmd = app.add_subcommand("moments", "Moments of a measure against the uniform ones");
  moments_cmd->add_option("--measure", measure_src, "Measure file or inline source")->required();
  moments_cmd->add_option("--max-k", max_k, "Highest moment")->capture_default_str();
  add_common(moments_cmd, common);

  // crossings
  std::string first_src, second_src, plot_path;
  CLI::App* crossings_cmd = app.add_subcommand("crossings", "Crossing points of F_second - F_first");
  crossings_cmd->add_option("--first", first_src)->required();
  crossings_cmd->add_option("--second", second_src)->required();
  crossings_cmd->add_option("--plot-data", plot_path, "Write CDF samples and crossings as CSV");
  add_common(crossings_cmd, common);

  // certify
  int order = 1;
  double tol = 1e-10;
  CLI::App* certify_cmd = app.add_subcommand("certify", "Decide the s-convex order of two measures");
  certify_cmd->add_option("--first", first_src)->required();
  certify_cmd->add_option("--second", second_src)->required();
  certify_cmd->add_option("--order", order, "s")->required();
  certify_cmd->add_option("--tol", tol, "Relative moment tolerance")->capture_default_str();
  add_common(certify_cmd, common);

  // sandwich
  std::uint64_t seed = 0;
  int spot_checks = 50;
  CLI::App* sandwich_cmd = app.add_subcommand("sandwich", "Certify the Gauss/Lobatto or Radau bounds");
  sandwich_cmd->add_option("--measure", measure_src)->required();
  sandwich_cmd->add_option("--order", order, "n")->required();
  sandwich_cmd->add_option("--seed", seed, "Seed for the spot-check functions")->capture_default_str();
  sandwich_cmd->add_option("--spot-checks", spot_checks)->capture_default_str();
  sandwich_cmd->add_option("--tol", tol)->capture_default_str();
  add_common(sandwich_cmd, common);

  // compare
  std::string rule1, rule2;
  int compare_max_k = 20;
  CLI::App* compare_cmd = app.add_subcommand("compare", "Moment-based comparability of two measures");
  compare_cmd->add_option("--rule1", rule1, "family:points or measure source")->required();
  compare_cmd->add_option("--rule2", rule2, "family:points or measure source")->required();
  compare_cmd->add_option("--order", order, "n")->required();
  compare_cmd->add_option("--max-k", compare_max_k)->capture_default_str();
  compare_cmd->add_option("--tol", tol)->capture_default_str();
  add_common(compare_cmd, common);

  // verify-corpus
  int count = 200;
  int threads = 1;
  std::string csv_path;
  CLI::App* corpus_cmd = app.add_subcommand("verify-corpus", "Check the sandwich bounds on random measures");
  corpus_cmd->add_option("--order", order, "n")->required();
  corpus_cmd->add_option("--count", count)->capture_default_str();
  corpus_cmd->add_option("--seed", seed)->capture_default_str();
  corpus_cmd->add_option("--threads", threads)->capture_default_str();
  corpus_cmd->add_option("--spot-checks", spot_checks)->capture_default_str();
  corpus_cmd->add_option("--csv", csv_path, "Write a per-measure CSV summary");
  add_common(corpus_cmd, common);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }

  try {
    const Interval interval = parse_interval(common.interval);

    if (rule_cmd->parsed()) {
      const auto family = parse_family(family_name);
      if (!family || *family == RuleFamily::Custom) {
        throw CLI::ValidationError("--family", "unknown rule family \"" + family_name + "\"");
      }
      if (*family != RuleFamily::Chebyshev3 && points == 0) {
        throw CLI::ValidationError("--points", "required for " + family_name);
      }
      const QuadratureRule rule = make_rule(*family, points == 0 ? 3 : points, interval);
      if (common.json) {
        out << io::to_json(rule).dump(2) << '\n';
      } else {
        out << "# " << to_string(rule.family()) << ' ' << rule.size() << "-point rule on "
            << interval_text(interval) << ", exactness degree " << rule.exactness_degree() << '\n';
        print_row(out, {"node", "weight"});
        for (std::size_t i = 0; i < rule.size(); ++i) {
          print_row(out, {format17(rule.nodes()[i]), format17(rule.weights()[i])});
        }
      }
      return 0;
    }

    if (moments_cmd->parsed()) {
      if (max_k < 0) throw CLI::ValidationError("--max-k", "must be >= 0");
      const Measure mu = load_measure(measure_src, interval);
      if (common.json) {
        json rows = json::array();
        for (int k = 0; k <= max_k; ++k) {
          rows.push_back({{"k", k}, {"moment", mu.moment(k)},
                          {"uniform", uniform_moment(mu.interval(), k)}});
        }
        out << json{{"measure", io::to_json(mu)}, {"moments", rows}}.dump(2) << '\n';
      } else {
        print_row(out, {"k", "moment", "uniform", "difference"});
        for (int k = 0; k <= max_k; ++k) {
          const double m = mu.moment(k);
          const double u = uniform_moment(mu.interval(), k);
          print_row(out, {std::to_string(k), format17(m), format17(u), format17(m - u)});
        }
      }
      return 0;
    }

    if (crossings_cmd->parsed()) {
      const Measure first = load_measure(first_src, interval);
      const Measure second = load_measure(second_src, interval);
      require_same_interval(first, second);
      const CrossingReport report = crossing_scan(first, second);
      if (!plot_path.empty()) write_plot_data(plot_path, first, second, report);
      if (common.json) {
        out << io::to_json(report).dump(2) << '\n';
      } else {
        print_crossings(out, report);
      }
      return 0;
    }

    if (certify_cmd->parsed()) {
      if (order < 1) throw CLI::ValidationError("--order", "must be >= 1");
      const Measure first = load_measure(first_src, interval);
      const Measure second = load_measure(second_src, interval);
      require_same_interval(first, second);
      const OrderCertificate cert = certify_s_convex_order(first, second, order, tol);
      if (common.json) {
        out << io::to_json(cert).dump(2) << '\n';
      } else {
        print_certificate(out, cert);
      }
      return verdict_code(cert.verdict);
    }

    if (sandwich_cmd->parsed()) {
      if (order < 1) throw CLI::ValidationError("--order", "must be >= 1");
      const Measure mu = load_measure(measure_src, interval);
      const SandwichResult r = certify_sandwich(mu, order, tol, seed, spot_checks);
      const int code = r.certified() && r.max_violation() <= 1e-9 ? kCertified : kInconclusive;
      if (common.json) {
        out << io::to_json(r).dump(2) << '\n';
        return code;
      }
      out << "order: " << r.n << '\n';
      out << "lower: " << to_string(r.lower_rule.family()) << ':' << r.lower_rule.size() << "  "
          << to_string(r.lower_certificate.verdict) << '\n';
      out << "upper: " << to_string(r.upper_rule.family()) << ':' << r.upper_rule.size() << "  "
          << to_string(r.upper_certificate.verdict) << '\n';
      out << "spot checks: " << r.spot_checks.size() << " (seed " << r.seed
          << "), max relative violation " << format17(r.max_violation()) << '\n';
      print_row(out, {"function", "lower", "middle", "upper"});
      for (const SpotCheck& c : r.spot_checks) {
        print_row(out, {c.function.describe(), format17(c.lower), format17(c.middle), format17(c.upper)});
      }
      return code;
    }

    if (compare_cmd->parsed()) {
      if (order < 1) throw CLI::ValidationError("--order", "must be >= 1");
      const Measure first = load_measure(rule1, interval);
      const Measure second = load_measure(rule2, interval);
      require_same_interval(first, second);
      const ComparabilityReport report = incomparability_check(first, second, order, tol, compare_max_k);
      std::optional<OrderCertificate> cert;
      if (report.verdict == Comparability::NecessaryConditionsHold) {
        cert = certify_s_convex_order(first, second, order, tol);
      }
      if (common.json) {
        json j = io::to_json(report);
        if (cert) j["certificate"] = io::to_json(*cert);
        out << j.dump(2) << '\n';
        return 0;
      }
      switch (report.verdict) {
      case Comparability::IncomparableCertified:
        out << "incomparable (shared moments: " << report.shared_degree << ")\n";
        break;
      case Comparability::MomentMismatch:
        out << "not comparable: moment " << *report.failing_moment << " differs";
        for (const Witness& w : report.witnesses) {
          out << "; " << w.function.describe() << " breaks " << to_string(w.refutes);
        }
        out << '\n';
        break;
      case Comparability::NecessaryConditionsHold:
        out << "necessary conditions hold (shared moments: " << report.shared_degree << ")\n";
        out << "certificate: " << to_string(cert->verdict) << ' ' << to_string(cert->direction) << '\n';
        break;
      }
      return 0;
    }

    if (corpus_cmd->parsed()) {
      if (order < 1) throw CLI::ValidationError("--order", "must be >= 1");
      if (count < 0) throw CLI::ValidationError("--count", "must be >= 0");
      const CorpusReport report = verify_corpus(order, count, seed, interval, threads, spot_checks);
      if (!csv_path.empty()) {
        std::ofstream csv(csv_path);
        if (!csv) throw ParseError("cannot write " + csv_path);
        csv << "n,seed,measure_index,verdict,max_violation\n";
        for (const CorpusItem& item : report.items) {
          Verdict v = Verdict::Certified;
          if (item.lower == Verdict::Refuted || item.upper == Verdict::Refuted) v = Verdict::Refuted;
          else if (item.lower != Verdict::Certified || item.upper != Verdict::Certified) v = Verdict::Inconclusive;
          csv << report.n << ',' << report.seed << ',' << item.index << ',' << to_string(v) << ','
              << format17(item.max_violation) << '\n';
        }
      }
      if (common.json) {
        out << io::to_json(report).dump(2) << '\n';
      } else {
        out << "order " << report.n << ", seed " << report.seed << ", " << report.items.size()
            << " measures on " << interval_text(report.interval) << '\n';
        out << "certified: " << report.certified_count() << '\n';
        out << "violations: " << report.total_violations() << '\n';
      }
      return report.total_violations() == 0 ? 0 : 1;
    }
  } catch (const CLI::ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const MomentHypothesisError& e) {
    err << "error: moment hypothesis fails at k = " << e.index() << ": " << e.what() << '\n';
    return kInconclusive;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kDataError;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

} // namespace quadorder::cli
