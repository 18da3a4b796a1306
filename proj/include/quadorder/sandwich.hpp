#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "quadorder/convexity.hpp"
#include "quadorder/measure.hpp"
#include "quadorder/ordering.hpp"
#include "quadorder/rules.hpp"

namespace quadorder {

struct RulePair {
  QuadratureRule lower;
  QuadratureRule upper;
};

/// Extremal rules for n-convex functions among measures sharing n moments with the
/// uniform one: Gauss_{(n+1)/2} / Lobatto_{(n+3)/2} for odd n, left / right
/// Radau_{(n+2)/2} for even n.
RulePair sandwich_rules(int n, Interval interval);

struct MomentHypothesis {
  bool holds = true;
  int first_failing = 0; // 0 when holds
};

/// Do moments 1..n of mu match the uniform moments (relative tol)?
MomentHypothesis check_moment_hypothesis(const Measure& mu, int n, double tol = 1e-10);

/// Raised by certify_sandwich when the moment hypothesis fails. Not recoverable: the
/// failing monomial already breaks one side of the bound.
class MomentHypothesisError : public std::runtime_error {
public:
  MomentHypothesisError(int index, const std::string& what)
      : std::runtime_error(what), index_(index) {}
  int index() const { return index_; }

private:
  int index_;
};

struct SpotCheck {
  TestFunction function;
  double lower;
  double middle;
  double upper;
  double scale; // max |f| on the interval

  /// Largest amount by which lower <= middle <= upper fails, relative to scale.
  double violation() const;
};

struct SandwichResult {
  int n = 0;
  QuadratureRule lower_rule;
  QuadratureRule upper_rule;
  OrderCertificate lower_certificate;
  OrderCertificate upper_certificate;
  std::vector<SpotCheck> spot_checks;
  std::uint64_t seed = 0;

  bool certified() const;
  double max_violation() const;
};

/// Bounds int f dmu between the sandwich rules for n-convex f and certifies both
/// sides through certify_s_convex_order. Throws MomentHypothesisError if moments 1..n
/// of mu do not match the uniform ones.
SandwichResult certify_sandwich(const Measure& mu, int n, double tol = 1e-10,
                                std::uint64_t seed = 0, int spot_checks = 50);

/// Seeded convex mixture of measures that each reproduce the uniform moments up to
/// degree >= n (uniform, Gauss, Lobatto, Radau, and Chebyshev3 when n <= 3).
Measure random_moment_matched_measure(int n, Interval interval, std::uint64_t seed);

/// (1 - weight) mu + weight nu_k, where nu_k matches the uniform moments below k but
/// not at k (Gauss_{k/2} for even k, left Radau_{(k+1)/2} for odd k). If mu matches
/// the uniform moments through degree >= k, the result first fails at degree k.
Measure perturb_moment(const Measure& mu, int k, double weight = 1e-3);

struct CorpusItem {
  int index = 0;
  std::uint64_t seed = 0; // seed of the measure and of its spot checks
  Verdict lower = Verdict::Inconclusive;
  Verdict upper = Verdict::Inconclusive;
  double max_violation = 0.0;
  int violations = 0; // spot checks with violation() > 1e-9
};

struct CorpusReport {
  int n = 0;
  std::uint64_t seed = 0;
  Interval interval{0.0, 1.0};
  std::vector<CorpusItem> items;

  int total_violations() const;
  int certified_count() const;
};

/// Runs certify_sandwich on `count` random moment-matched measures. Item i uses seed
/// (seed, i); results are returned in index order regardless of `threads`.
CorpusReport verify_corpus(int n, int count, std::uint64_t seed, Interval interval,
                           int threads = 1, int spot_checks = 50);

} // namespace quadorder
