#include <doctest.h>

#include <cmath>

#include "quadorder/io.hpp"
#include "quadorder/oracle.hpp"
#include "quadorder/sandwich.hpp"
#include "support/oracles.hpp"

using namespace quadorder;

namespace {

const Interval unit_interval(0.0, 1.0);
const Interval sym(-1.0, 1.0);
const Interval wide(-3.0, 5.0);

SpotCheck spot(const Measure& mu, int n, const TestFunction& f) {
  const auto rules = sandwich_rules(n, mu.interval());
  return {f, rules.lower.apply(f), expectation(mu, f), rules.upper.apply(f), f.max_abs(mu.interval())};
}

} // namespace

TEST_CASE("sandwich rules") {
  auto expect = [](int n, RuleFamily lo, std::size_t lo_pts, RuleFamily hi, std::size_t hi_pts) {
    const auto r = sandwich_rules(n, unit_interval);
    CHECK(r.lower.family() == lo);
    CHECK(r.lower.size() == lo_pts);
    CHECK(r.upper.family() == hi);
    CHECK(r.upper.size() == hi_pts);
  };
  expect(1, RuleFamily::Gauss, 1, RuleFamily::Lobatto, 2);
  expect(3, RuleFamily::Gauss, 2, RuleFamily::Lobatto, 3);
  expect(2, RuleFamily::RadauLeft, 2, RuleFamily::RadauRight, 2);
  expect(6, RuleFamily::RadauLeft, 4, RuleFamily::RadauRight, 4);
  CHECK(sandwich_rules(1, unit_interval).lower.nodes()[0] == 0.5);
  CHECK_THROWS_AS(sandwich_rules(0, unit_interval), std::invalid_argument);
}

TEST_CASE("moment hypothesis") {
  CHECK(check_moment_hypothesis(from_rule(chebyshev3(sym)), 3).holds);
  CHECK(check_moment_hypothesis(dirac(unit_interval, 0.5), 1).holds);
  const auto h = check_moment_hypothesis(dirac(unit_interval, 0.5), 2);
  CHECK_FALSE(h.holds);
  CHECK(h.first_failing == 2);
  for (int n = 1; n <= 12; ++n) CHECK(check_moment_hypothesis(uniform(wide), n).holds);
  CHECK_FALSE(check_moment_hypothesis(from_rule(chebyshev3(sym)), 4).holds);
}

TEST_CASE("worked spot checks") {
  const Measure u = uniform(unit_interval);
  const auto a = spot(u, 3, TestFunction::monomial(4, 3));
  CHECK(std::abs(a.lower - 7.0 / 36) < 1e-15);
  CHECK(std::abs(a.middle - 0.2) < 1e-15);
  CHECK(std::abs(a.upper - 5.0 / 24) < 1e-15);
  CHECK(a.violation() == 0.0);

  const auto b = spot(u, 2, TestFunction::monomial(3, 2));
  CHECK(std::abs(b.lower - 2.0 / 9) < 1e-15);
  CHECK(std::abs(b.middle - 0.25) < 1e-15);
  CHECK(std::abs(b.upper - 5.0 / 18) < 1e-15);

  const auto c = spot(from_rule(chebyshev3(sym)), 3, TestFunction::monomial(4, 3));
  CHECK(std::abs(c.lower - 1.0 / 9) < 1e-15);
  CHECK(std::abs(c.middle - 1.0 / 6) < 1e-15);
  CHECK(std::abs(c.upper - 1.0 / 3) < 1e-15);

  const SpotCheck broken{TestFunction::monomial(2, 1), 0.5, 0.4, 0.9, 2.0};
  CHECK(broken.violation() == doctest::Approx(0.05));
}

TEST_CASE("certify_sandwich") {
  const auto r = certify_sandwich(uniform(unit_interval), 3, 1e-10, 9);
  CHECK(r.certified());
  CHECK(r.lower_certificate.verdict == Verdict::Certified);
  CHECK(r.lower_certificate.direction == Direction::FirstBelowSecond);
  CHECK(r.upper_certificate.verdict == Verdict::Certified);
  CHECK(r.upper_certificate.direction == Direction::FirstBelowSecond);
  CHECK(r.spot_checks.size() == 50);
  CHECK(r.max_violation() <= 1e-9);
  CHECK(r.seed == 9);

  const auto again = certify_sandwich(uniform(unit_interval), 3, 1e-10, 9);
  CHECK(io::to_json(r).dump() == io::to_json(again).dump());

  try {
    certify_sandwich(dirac(unit_interval, 0.5), 2);
    FAIL("expected MomentHypothesisError");
  } catch (const MomentHypothesisError& e) {
    CHECK(e.index() == 2);
  }
}

TEST_CASE("random moment-matched measures") {
  const Measure a = random_moment_matched_measure(3, unit_interval, 0);
  CHECK(check_moment_hypothesis(a, 3).holds);
  CHECK(shared_moment_degree(random_moment_matched_measure(5, unit_interval, 1), uniform(unit_interval), 10) >= 5);
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const Measure m = random_moment_matched_measure(3, wide, seed);
    CHECK(std::abs(m.total_mass() - 1.0) < 1e-13);
    CHECK(check_moment_hypothesis(m, 3).holds);
  }
  CHECK(io::to_json(random_moment_matched_measure(4, sym, 17)).dump() ==
        io::to_json(random_moment_matched_measure(4, sym, 17)).dump());
}

TEST_CASE("oracle integral") {
  const Measure u = uniform(unit_interval);
  CHECK(oracle_integral(u, std::vector<double>{0, 0, 0, 0, 1}) == HighPrecision(1) / 5);
  const HighPrecision g = oracle_integral(from_rule(gauss(2, unit_interval)), TestFunction::monomial(4, 3));
  CHECK(abs(g - HighPrecision(7) / 36) < HighPrecision("1e-15"));
  const HighPrecision t = oracle_integral(u, TestFunction::truncated_power(3, 0.3));
  // the knot is the binary double nearest 0.3, so agreement is to double precision
  CHECK(abs(t - HighPrecision("0.060025")) < HighPrecision("1e-16"));
}

TEST_CASE("property: sandwich holds on other intervals") {
  for (const Interval& I : {sym, wide, Interval(2.0, 2.5)}) {
    for (int n = 1; n <= 6; ++n) {
      const auto report = verify_corpus(n, 20, 77, I, 2);
      CAPTURE(n);
      CHECK(report.certified_count() == 20);
      CHECK(report.total_violations() == 0);
    }
  }
}

TEST_CASE("crossing counts of the sandwich rules against the uniform measure") {
  for (const Interval& I : {unit_interval, wide}) {
    for (int n = 1; n <= 7; ++n) {
      const auto rules = sandwich_rules(n, I);
      const Measure u = uniform(I);
      CAPTURE(n);
      CHECK(crossing_scan(u, from_rule(rules.lower)).count() == n);
      CHECK(crossing_scan(u, from_rule(rules.upper)).count() == n);
      CHECK(oracle::dense_crossing_count(u, from_rule(rules.lower)) == n);
      CHECK(oracle::dense_crossing_count(u, from_rule(rules.upper)) == n);
    }
  }
}

TEST_CASE("rules exact to degree n lie between the sandwich bounds") {
  for (int n = 1; n <= 6; ++n) {
    for (auto fam : {RuleFamily::Gauss, RuleFamily::Lobatto, RuleFamily::RadauLeft, RuleFamily::RadauRight}) {
      for (int m = 1; m <= 8; ++m) {
        if (fam == RuleFamily::Lobatto && m < 2) continue;
        const auto rule = make_rule(fam, m, wide);
        if (rule.exactness_degree() < n) continue;
        const auto r = certify_sandwich(from_rule(rule), n, 1e-10, static_cast<std::uint64_t>(m));
        CAPTURE(n);
        CAPTURE(to_string(fam));
        CAPTURE(m);
        CHECK(r.certified());
        CHECK(r.max_violation() <= 1e-9);
      }
    }
  }
}

TEST_CASE("perturbing one moment breaks the hypothesis and one side of the bound") {
  oracle::for_all(40, 51, [](std::mt19937_64& rng, int i) {
    const Interval I = (i % 2 == 0) ? unit_interval : wide;
    const int n = 1 + i % 6;
    const int k = std::uniform_int_distribution<int>(1, n)(rng);
    const Measure mu = perturb_moment(random_moment_matched_measure(n, I, rng()), k);
    const auto h = check_moment_hypothesis(mu, n);
    CAPTURE(n);
    CAPTURE(k);
    CHECK_FALSE(h.holds);
    CHECK(h.first_failing == k);
    CHECK_THROWS_AS(certify_sandwich(mu, n), MomentHypothesisError);

    const auto plus = spot(mu, n, TestFunction::monomial(k, n, 1.0));
    const auto minus = spot(mu, n, TestFunction::monomial(k, n, -1.0));
    const bool plus_low = plus.middle < plus.lower;
    const bool plus_high = plus.middle > plus.upper;
    const bool minus_low = minus.middle < minus.lower;
    const bool minus_high = minus.middle > minus.upper;
    CHECK((plus_low || plus_high));
    CHECK((minus_low || minus_high));
    CHECK(plus_low == minus_high);
    CHECK(plus.violation() > 1e-8);
    CHECK(minus.violation() > 1e-8);
  });
  CHECK_THROWS_AS(perturb_moment(uniform(unit_interval), 0), std::invalid_argument);
}

TEST_CASE("corpus results do not depend on the thread count") {
  const auto one = verify_corpus(4, 40, 2024, unit_interval, 1, 10);
  const auto many = verify_corpus(4, 40, 2024, unit_interval, 6, 10);
  CHECK(io::to_json(one).dump() == io::to_json(many).dump());
  REQUIRE(one.items.size() == 40);
  for (int i = 0; i < 40; ++i) CHECK(one.items[i].index == i);
  CHECK(one.seed == 2024);
  const auto other = verify_corpus(4, 40, 2025, unit_interval, 1, 10);
  CHECK(io::to_json(one).dump() != io::to_json(other).dump());
}
