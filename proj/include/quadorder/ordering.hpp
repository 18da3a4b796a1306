#pragma once

#include <optional>
#include <string>
#include <vector>

#include "quadorder/convexity.hpp"
#include "quadorder/measure.hpp"

namespace quadorder {

enum class Sign { Minus = -1, Zero = 0, Plus = 1 };

std::string to_string(Sign s);
inline Sign flip(Sign s) { return static_cast<Sign>(-static_cast<int>(s)); }

/// Sign-alternation structure of D = F_second - F_first.
struct CrossingReport {
  std::vector<double> crossings;   // strictly increasing
  Sign initial_sign = Sign::Zero;  // sign of D before the first crossing
  std::vector<Sign> sign_sequence; // sign on each region, crossings.size() + 1 entries (empty if Zero)

  int count() const { return static_cast<int>(crossings.size()); }
};

/// Crossing points of the CDF difference F_second - F_first.
///
/// Inside each smooth cell the difference is a polynomial; sign changes are bracketed
/// on a 256-point sub-grid and refined by bisection. A sign change across an atom is
/// placed at the atom. Runs where |D| <= 1e-12 carry no sign; tangential touches do
/// not count, and an identically-zero cell separating opposite signs yields one
/// crossing at its right end.
CrossingReport crossing_scan(const Measure& first, const Measure& second);

/// Largest l <= max_k such that moments 1..l agree to tol * max(1, |m_first|, |m_second|).
int shared_moment_degree(const Measure& first, const Measure& second, int max_k,
                         double tol = 1e-10);

enum class Verdict { Certified, Refuted, Inconclusive };
enum class Direction { FirstBelowSecond, SecondBelowFirst };

std::string to_string(Verdict v);
std::string to_string(Direction d);

/// Explicit n-convex function violating one direction of the order.
struct Witness {
  TestFunction function;
  Direction refutes;  // the inequality this function breaks
  double violation;   // amount by which it is broken (> 0)
};

struct OrderCertificate {
  Verdict verdict = Verdict::Inconclusive;
  int s = 1;
  Direction direction = Direction::FirstBelowSecond;
  std::vector<double> moment_residuals; // moment(first, j) - moment(second, j), j = 1..s
  CrossingReport crossing_report;
  std::vector<Witness> witnesses;
  bool equal_measures = false;
  std::string notes;
};

/// Convention used for the initial sign in certify_s_convex_order.
extern const char* const kSignConvention;

/// Decides the s-convex order between two measures on the same interval.
///
/// Certified(FirstBelowSecond), i.e. int f dfirst <= int f dsecond for every s-convex
/// f, when moments 1..s agree, F_second - F_first crosses exactly s times, and
/// (-1)^(s+1) (F_second - F_first) >= 0 before the first crossing. The mirrored sign
/// certifies SecondBelowFirst. At s = 1 this is Ohlin's lemma.
///
/// Refuted needs an explicit witness: +-x^j for a mismatched moment j <= s, or
/// x^(s+1) / max(x - t, 0)^s with the wrong sign of int f d(second - first). The
/// certificate then reports the requested direction (FirstBelowSecond) as refuted.
/// A crossing count other than s alone only yields Inconclusive.
OrderCertificate certify_s_convex_order(const Measure& first, const Measure& second, int s,
                                        double tol = 1e-10);

enum class Comparability { IncomparableCertified, NecessaryConditionsHold, MomentMismatch };

std::string to_string(Comparability c);

struct ComparabilityReport {
  Comparability verdict = Comparability::NecessaryConditionsHold;
  int shared_degree = 0;               // shared_moment_degree up to max_k
  std::optional<int> failing_moment;   // set for MomentMismatch
  std::vector<Witness> witnesses;      // +-x^j for MomentMismatch
};

/// Moment-based necessary conditions for n-convex comparability.
///  - MomentMismatch: some moment j <= n differs; x^j and -x^j are both n-convex and
///    each breaks one direction.
///  - IncomparableCertified: moments 1..n+1 agree but the measures differ, so
///    neither direction can hold for all n-convex f.
///  - NecessaryConditionsHold: otherwise.
ComparabilityReport incomparability_check(const Measure& first, const Measure& second, int n,
                                          double tol = 1e-10, int max_k = 20);

/// True when the two CDFs coincide (no region where |F_second - F_first| > 1e-12).
bool same_distribution(const Measure& first, const Measure& second);

/// D = F_second - F_first on `points` equispaced samples, for plotting.
struct CdfSample {
  double x;
  double first;
  double second;
};
std::vector<CdfSample> sample_cdfs(const Measure& first, const Measure& second, int points);

} // namespace quadorder
