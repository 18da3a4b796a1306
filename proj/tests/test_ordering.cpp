#include <doctest.h>

#include <cmath>

#include "quadorder/ordering.hpp"
#include "quadorder/rules.hpp"
#include "support/oracles.hpp"

using namespace quadorder;

namespace {

const Interval unit_interval(0.0, 1.0);
const Interval sym(-1.0, 1.0);

Measure rule_measure(RuleFamily fam, int m, const Interval& I) { return from_rule(make_rule(fam, m, I)); }

Measure two_atoms(const Interval& I, double x1, double x2) { return Measure(I, {{x1, 0.5}, {x2, 0.5}}); }

} // namespace

TEST_CASE("crossing scan examples") {
  const Measure u = uniform(unit_interval);
  const Measure g2 = rule_measure(RuleFamily::Gauss, 2, unit_interval);

  SUBCASE("uniform against two-point Gauss") {
    // F_uniform - F_G2 is positive before the first node
    const auto r = crossing_scan(g2, u);
    REQUIRE(r.count() == 3);
    CHECK(std::abs(r.crossings[0] - (3 - std::sqrt(3.0)) / 6) < 1e-15);
    CHECK(std::abs(r.crossings[1] - 0.5) < 1e-15);
    CHECK(std::abs(r.crossings[2] - (3 + std::sqrt(3.0)) / 6) < 1e-15);
    CHECK(r.initial_sign == Sign::Plus);
    CHECK(r.sign_sequence == std::vector<Sign>{Sign::Plus, Sign::Minus, Sign::Plus, Sign::Minus});
    CHECK(oracle::dense_crossing_count(g2, u) == 3);
  }
  SUBCASE("identical measures") {
    const auto r = crossing_scan(u, u);
    CHECK(r.count() == 0);
    CHECK(r.initial_sign == Sign::Zero);
    CHECK(r.sign_sequence.empty());
  }
  SUBCASE("Chebyshev against Gauss on [-1,1]") {
    const Measure c3 = from_rule(chebyshev3(sym));
    const Measure g = rule_measure(RuleFamily::Gauss, 2, sym);
    const auto r = crossing_scan(g, c3);
    REQUIRE(r.count() == 3);
    const double t = 1.0 / std::sqrt(3.0);
    CHECK(std::abs(r.crossings[0] + t) < 1e-15);
    CHECK(r.crossings[1] == 0.0);
    CHECK(std::abs(r.crossings[2] - t) < 1e-15);
    CHECK(r.initial_sign == Sign::Plus);
    // step table of F_C3 - F_G2
    const double h = 1.0 / std::sqrt(2.0);
    auto diff = [&](double x) { return c3.cdf(x) - g.cdf(x); };
    CHECK(diff(-0.99) == 0.0);
    CHECK(std::abs(diff(-0.5 * (h + t)) - 1.0 / 3) < 1e-15);
    CHECK(std::abs(diff(-0.3) + 1.0 / 6) < 1e-15);
    CHECK(std::abs(diff(0.3) - 1.0 / 6) < 1e-15);
    CHECK(std::abs(diff(0.5 * (h + t)) + 1.0 / 3) < 1e-15);
    CHECK(oracle::dense_crossing_count(g, c3) == 3);
  }
  SUBCASE("a zero plateau between opposite signs gives one crossing at its right end") {
    const auto r = crossing_scan(two_atoms(unit_interval, 0.2, 0.8), two_atoms(unit_interval, 0.1, 0.9));
    REQUIRE(r.count() == 1);
    CHECK(r.crossings[0] == 0.8);
    CHECK(r.initial_sign == Sign::Plus);
  }
  SUBCASE("a zero plateau between equal signs gives none") {
    const auto r = crossing_scan(two_atoms(unit_interval, 0.2, 0.8), two_atoms(unit_interval, 0.1, 0.7));
    CHECK(r.count() == 0);
    CHECK(r.initial_sign == Sign::Plus);
  }
  SUBCASE("tangential touch is not a crossing") {
    // D = F_second - F_first is a tent on [0,1/2] and on [1/2,1], touching 0 at 1/2
    const Measure first(unit_interval, {},
                        {DensityPiece(Interval(0.0, 0.5), {1.5}), DensityPiece(Interval(0.5, 1.0), {0.5})});
    const Measure second(unit_interval, {},
                         {DensityPiece(Interval(0.0, 0.25), {2.0}), DensityPiece(Interval(0.25, 0.5), {1.0}),
                          DensityPiece(Interval(0.5, 0.75), {1.0}), DensityPiece(Interval(0.75, 1.0), {0.0})});
    const auto r = crossing_scan(first, second);
    CHECK(r.count() == 0);
    CHECK(r.initial_sign == Sign::Plus);
    CHECK(oracle::dense_crossing_count(first, second) == 0);
  }
  SUBCASE("simple and double roots inside a cell") {
    // density 12x^2 - 12x + 3, so F - x = 2x(2x - 1)(x - 1) changes sign at 1/2
    const Measure cubic(unit_interval, {}, {DensityPiece(unit_interval, {3.0, -12.0, 12.0})});
    const auto r = crossing_scan(uniform(unit_interval), cubic);
    REQUIRE(r.count() == 1);
    CHECK(r.crossings[0] == 0.5);
    const double c = 0.5;
    // F - x = c x (1 - x)(2x - 1)^2 has a double root at 1/2
    const Measure touch(unit_interval, {},
                        {DensityPiece(unit_interval, {1.0 + c, -10.0 * c, 24.0 * c, -16.0 * c})});
    const auto t = crossing_scan(uniform(unit_interval), touch);
    CHECK(t.count() == 0);
    CHECK(t.initial_sign == Sign::Plus);
  }
  SUBCASE("mismatched intervals") {
    CHECK_THROWS_AS(crossing_scan(u, uniform(sym)), std::invalid_argument);
  }
}

TEST_CASE("shared moment degree") {
  const Measure g3 = rule_measure(RuleFamily::Gauss, 3, sym);
  const Measure l4 = rule_measure(RuleFamily::Lobatto, 4, sym);
  CHECK(shared_moment_degree(g3, l4, 10) == 5);
  CHECK(shared_moment_degree(uniform(unit_interval), rule_measure(RuleFamily::Gauss, 2, unit_interval), 10) == 3);
  CHECK(shared_moment_degree(g3, g3, 12) == 12);
  CHECK(shared_moment_degree(dirac(unit_interval, 0.3), uniform(unit_interval), 10) == 0);
}

TEST_CASE("certify examples") {
  SUBCASE("Dirac at the midpoint below the uniform measure") {
    const auto c = certify_s_convex_order(dirac(unit_interval, 0.5), uniform(unit_interval), 1);
    CHECK(c.verdict == Verdict::Certified);
    CHECK(c.direction == Direction::FirstBelowSecond);
    CHECK(c.crossing_report.count() == 1);
    CHECK(c.crossing_report.crossings[0] == 0.5);
    CHECK(c.moment_residuals.size() == 1);
    const auto rev = certify_s_convex_order(uniform(unit_interval), dirac(unit_interval, 0.5), 1);
    CHECK(rev.verdict == Verdict::Certified);
    CHECK(rev.direction == Direction::SecondBelowFirst);
  }
  SUBCASE("Gauss below Chebyshev below Lobatto for 3-convex functions") {
    const Measure g2 = rule_measure(RuleFamily::Gauss, 2, sym);
    const Measure c3 = from_rule(chebyshev3(sym));
    const Measure l3 = rule_measure(RuleFamily::Lobatto, 3, sym);
    const auto a = certify_s_convex_order(g2, c3, 3);
    CHECK(a.verdict == Verdict::Certified);
    CHECK(a.direction == Direction::FirstBelowSecond);
    const auto b = certify_s_convex_order(c3, l3, 3);
    CHECK(b.verdict == Verdict::Certified);
    CHECK(b.direction == Direction::FirstBelowSecond);
    CHECK(std::string(kSignConvention).size() > 0);
  }
  SUBCASE("Gauss 3 and Lobatto 4 are not comparable") {
    const Measure g3 = rule_measure(RuleFamily::Gauss, 3, sym);
    const Measure l4 = rule_measure(RuleFamily::Lobatto, 4, sym);
    const auto c = certify_s_convex_order(g3, l4, 3);
    CHECK(c.verdict != Verdict::Certified);
    CHECK(c.verdict == Verdict::Refuted);
    for (const auto& w : c.witnesses) {
      CHECK(w.violation > 0.0);
      CHECK(is_n_convex_on_grid(w.function, 3, uniform_grid(sym, 100)));
    }
  }
  SUBCASE("identical measures") {
    const Measure g = rule_measure(RuleFamily::Gauss, 4, unit_interval);
    const auto c = certify_s_convex_order(g, g, 2);
    CHECK(c.verdict == Verdict::Certified);
    CHECK(c.equal_measures);
  }
  SUBCASE("moment mismatch is refuted by both monomials") {
    const auto c = certify_s_convex_order(dirac(unit_interval, 0.5), uniform(unit_interval), 2);
    CHECK(c.verdict == Verdict::Refuted);
    REQUIRE(c.witnesses.size() >= 2);
    bool plus = false, minus = false;
    for (const auto& w : c.witnesses) {
      if (w.function.kind == TestFunction::Kind::Monomial && w.function.degree == 2) {
        (w.function.sign > 0 ? plus : minus) = true;
        CHECK(w.violation > 0.0);
      }
    }
    CHECK((plus && minus));
  }
  SUBCASE("errors") {
    CHECK_THROWS_AS(certify_s_convex_order(uniform(unit_interval), uniform(unit_interval), 0), std::invalid_argument);
    CHECK_THROWS_AS(certify_s_convex_order(uniform(unit_interval), uniform(sym), 1), std::invalid_argument);
  }
}

TEST_CASE("incomparability check examples") {
  const auto a = incomparability_check(rule_measure(RuleFamily::Gauss, 3, sym),
                                       rule_measure(RuleFamily::Lobatto, 4, sym), 3);
  CHECK(a.verdict == Comparability::IncomparableCertified);
  CHECK(a.shared_degree == 5);
  const auto b = incomparability_check(rule_measure(RuleFamily::Gauss, 2, unit_interval), uniform(unit_interval), 3);
  CHECK(b.verdict == Comparability::NecessaryConditionsHold);
  const auto c = incomparability_check(dirac(unit_interval, 0.5), uniform(unit_interval), 2);
  CHECK(c.verdict == Comparability::MomentMismatch);
  REQUIRE(c.failing_moment.has_value());
  CHECK(*c.failing_moment == 2);
  CHECK(c.witnesses.size() == 2);
  CHECK(to_string(Comparability::IncomparableCertified) == "incomparable");
  const auto same = incomparability_check(uniform(unit_interval), uniform(unit_interval), 3);
  CHECK(same.verdict == Comparability::NecessaryConditionsHold);
}

TEST_CASE("property: crossing scan is antisymmetric and agrees with dense sampling") {
  int nontrivial = 0;
  oracle::for_all(1000, 41, [&](std::mt19937_64& rng, int i) {
    const Interval I = (i % 2 == 0) ? unit_interval : Interval(-3.0, 5.0);
    const Measure a = oracle::random_measure(rng, I);
    const Measure b = oracle::random_measure(rng, I);
    const auto ab = crossing_scan(a, b);
    const auto ba = crossing_scan(b, a);
    CAPTURE(i);
    REQUIRE(ab.count() == ba.count());
    for (int k = 0; k < ab.count(); ++k) CHECK(ab.crossings[k] == ba.crossings[k]);
    CHECK(ba.initial_sign == flip(ab.initial_sign));
    for (std::size_t k = 0; k < ab.sign_sequence.size(); ++k) CHECK(ba.sign_sequence[k] == flip(ab.sign_sequence[k]));
    // alternation
    for (std::size_t k = 1; k < ab.sign_sequence.size(); ++k) CHECK(ab.sign_sequence[k] == flip(ab.sign_sequence[k - 1]));
    if (i < 200) CHECK(oracle::dense_crossing_count(a, b) == ab.count());
    if (ab.count() > 0) ++nontrivial;
  });
  CHECK(nontrivial > 500);
}

TEST_CASE("property: dense-grid oracle on moment-matched rule pairs") {
  oracle::for_all(60, 42, [](std::mt19937_64& rng, int) {
    std::uniform_int_distribution<int> fam(0, 3), pts(2, 7);
    const Interval I(-3.0, 5.0);
    const Measure a = rule_measure(static_cast<RuleFamily>(fam(rng)), pts(rng), I);
    const Measure b = rule_measure(static_cast<RuleFamily>(fam(rng)), pts(rng), I);
    CHECK(crossing_scan(a, b).count() == oracle::dense_crossing_count(a, b));
    CHECK(crossing_scan(a, uniform(I)).count() == oracle::dense_crossing_count(a, uniform(I)));
  });
}

TEST_CASE("property: certified order holds for sampled s-convex functions") {
  int certified = 0;
  oracle::for_all(300, 43, [&](std::mt19937_64& rng, int i) {
    const Interval I = (i % 3 == 0) ? Interval(-3.0, 5.0) : unit_interval;
    std::uniform_int_distribution<int> s_pick(1, 5), fam(0, 3), mix_pick(0, 1);
    const int s = s_pick(rng);
    // Moment-matched pairs: rules and mixtures of rules that are exact to degree >= s
    auto component = [&]() {
      while (true) {
        const auto f = static_cast<RuleFamily>(fam(rng));
        const int m = std::uniform_int_distribution<int>(1, 6)(rng);
        if (f == RuleFamily::Lobatto && m < 2) continue;
        const auto r = make_rule(f, m, I);
        if (r.exactness_degree() >= s) return from_rule(r);
      }
    };
    const Measure first = component();
    Measure second = component();
    if (mix_pick(rng)) {
      const double w = std::uniform_real_distribution<double>(0.1, 0.9)(rng);
      const std::vector<std::pair<double, Measure>> parts{{w, second}, {1 - w, uniform(I)}};
      second = mix(parts);
    }
    const auto c = certify_s_convex_order(first, second, s);
    if (c.verdict != Verdict::Certified || c.equal_measures) return;
    ++certified;
    const Measure& lo = c.direction == Direction::FirstBelowSecond ? first : second;
    const Measure& hi = c.direction == Direction::FirstBelowSecond ? second : first;
    for (const auto& f : sample_test_functions(s, 100, rng(), I)) {
      CAPTURE(f.describe());
      CHECK(expectation(lo, f) <= expectation(hi, f) + 1e-9 * f.max_abs(I));
    }
  });
  CHECK(certified >= 50);
}

TEST_CASE("property: s = 1 reproduces the one-crossing lemma") {
  oracle::for_all(50, 44, [](std::mt19937_64& rng, int) {
    // atom at the mean mixed with a uniform part, against the uniform measure
    std::uniform_real_distribution<double> w(0.05, 0.95);
    const double weight = w(rng);
    const std::vector<std::pair<double, Measure>> parts{{weight, dirac(unit_interval, 0.5)},
                                                        {1 - weight, uniform(unit_interval)}};
    const Measure first = mix(parts);
    const Measure second = uniform(unit_interval);
    const auto c = certify_s_convex_order(first, second, 1);
    CHECK(c.verdict == Verdict::Certified);
    CHECK(c.direction == Direction::FirstBelowSecond);
    REQUIRE(c.crossing_report.count() == 1);
    CHECK(c.crossing_report.crossings[0] == 0.5);
    // F_first <= F_second before the crossing
    for (double x = 0.01; x < 0.5; x += 0.01) CHECK(first.cdf(x) <= second.cdf(x) + 1e-15);
    for (const auto& f : sample_test_functions(1, 20, rng(), unit_interval)) {
      CHECK(expectation(first, f) <= expectation(second, f) + 1e-12);
    }
  });
}

TEST_CASE("property: mismatched moments are witnessed by both signs of the monomial") {
  oracle::for_all(200, 45, [](std::mt19937_64& rng, int i) {
    const Interval I = (i % 2 == 0) ? unit_interval : Interval(-3.0, 5.0);
    const Measure a = oracle::random_measure(rng, I);
    const Measure b = oracle::random_measure(rng, I);
    const int s = 1 + i % 5;
    const int j = shared_moment_degree(a, b, s) + 1;
    if (j > s) return;
    const auto c = certify_s_convex_order(a, b, s);
    CHECK(c.verdict == Verdict::Refuted);
    const double diff = a.moment(j) - b.moment(j);
    // x^j breaks one direction, -x^j the other
    const auto plus = TestFunction::monomial(j, s, 1.0), minus = TestFunction::monomial(j, s, -1.0);
    CHECK(std::abs(expectation(a, plus) - expectation(b, plus) - diff) <= 1e-9 * std::max(1.0, std::abs(diff)));
    CHECK((expectation(a, plus) - expectation(b, plus)) * (expectation(a, minus) - expectation(b, minus)) < 0.0);
    int found = 0;
    for (const auto& w : c.witnesses) {
      if (w.function.kind == TestFunction::Kind::Monomial && w.function.degree == j) {
        ++found;
        CHECK(w.violation == doctest::Approx(std::abs(diff)));
      }
    }
    CHECK(found == 2);
  });
}
