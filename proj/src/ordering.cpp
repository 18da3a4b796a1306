#include "quadorder/ordering.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "quadorder/polynomial.hpp"

namespace quadorder {

const char* const kSignConvention =
    "FirstBelowSecond is certified when (-1)^(s+1) (F_second - F_first) >= 0 before the first "
    "crossing; for s = 1 this is Ohlin's lemma (F_first <= F_second left of the crossing).";

namespace {

constexpr int kCellSubdivisions = 256;
constexpr double kZeroTol = 1e-12;
constexpr int kWitnessKnots = 1024;
constexpr double kWitnessTol = 1e-9;

Sign sign_of(double v) {
  if (v > kZeroTol) return Sign::Plus;
  if (v < -kZeroTol) return Sign::Minus;
  return Sign::Zero;
}

void require_same_interval(const Measure& first, const Measure& second, const char* who) {
  if (!(first.interval() == second.interval())) {
    throw std::invalid_argument(std::string(who) + ": measures live on different intervals");
  }
}

struct Sample {
  double x;
  double value;
  int cell; // cell c spans (t_c, t_{c+1}); -1 for the final point b
};

double moment_tol(double tol, double m1, double m2) {
  return tol * std::max({1.0, std::abs(m1), std::abs(m2)});
}

} // namespace

std::string to_string(Sign s) {
  switch (s) {
  case Sign::Minus: return "minus";
  case Sign::Zero: return "zero";
  case Sign::Plus: return "plus";
  }
  return "zero";
}

std::string to_string(Verdict v) {
  switch (v) {
  case Verdict::Certified: return "certified";
  case Verdict::Refuted: return "refuted";
  case Verdict::Inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

std::string to_string(Direction d) {
  return d == Direction::FirstBelowSecond ? "first-below-second" : "second-below-first";
}

std::string to_string(Comparability c) {
  switch (c) {
  case Comparability::IncomparableCertified: return "incomparable";
  case Comparability::NecessaryConditionsHold: return "necessary-conditions-hold";
  case Comparability::MomentMismatch: return "moment-mismatch";
  }
  return "necessary-conditions-hold";
}

CrossingReport crossing_scan(const Measure& first, const Measure& second) {
  require_same_interval(first, second, "crossing_scan");

  std::vector<double> cuts = first.breakpoints();
  const std::vector<double> more = second.breakpoints();
  cuts.insert(cuts.end(), more.begin(), more.end());
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  const int cells = static_cast<int>(cuts.size()) - 1;

  auto diff = [&](double x) { return second.cdf(x) - first.cdf(x); };
  auto diff_left = [&](double x) { return second.cdf_left(x) - first.cdf_left(x); };

  std::vector<Sample> samples;
  samples.reserve(static_cast<std::size_t>(cells) * (kCellSubdivisions + 1) + 2);
  std::vector<bool> plateau(cells, true);
  for (int c = 0; c <= cells; ++c) {
    const double t = cuts[c];
    if (c > 0) samples.push_back({t, diff_left(t), c - 1});
    samples.push_back({t, diff(t), c < cells ? c : -1});
    if (c == cells) break;
    const double width = cuts[c + 1] - t;
    for (int j = 1; j < kCellSubdivisions; ++j) {
      const double x = t + width * j / kCellSubdivisions;
      samples.push_back({x, diff(x), c});
    }
  }
  for (const Sample& s : samples) {
    if (s.cell >= 0 && sign_of(s.value) != Sign::Zero) plateau[s.cell] = false;
  }

  CrossingReport report;
  Sign current = Sign::Zero;
  std::size_t last = 0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const Sign s = sign_of(samples[i].value);
    if (s == Sign::Zero) continue;
    if (current == Sign::Zero) {
      current = s;
      report.initial_sign = s;
      report.sign_sequence.push_back(s);
      last = i;
      continue;
    }
    if (s == current) {
      last = i;
      continue;
    }

    const Sample& lo = samples[last];
    const Sample& hi = samples[i];
    double where = 0.0;
    int plateau_cell = -1;
    for (int c = lo.cell + 1; c < hi.cell; ++c) {
      if (plateau[c]) plateau_cell = c;
    }
    if (plateau_cell >= 0) {
      where = cuts[plateau_cell + 1];
    } else if (lo.cell == hi.cell) {
      double a = lo.x;
      double b = hi.x;
      const int want = static_cast<int>(current);
      // Bisect down to adjacent doubles.
      for (int iter = 0; iter < 200; ++iter) {
        const double mid = 0.5 * (a + b);
        if (mid <= a || mid >= b) break;
        const double v = diff(mid);
        if (v == 0.0) {
          a = b = mid;
          break;
        }
        if ((v > 0.0 ? 1 : -1) == want) {
          a = mid;
        } else {
          b = mid;
        }
      }
      where = 0.5 * (a + b);
    } else {
      where = cuts[lo.cell + 1];
    }
    report.crossings.push_back(where);
    report.sign_sequence.push_back(s);
    current = s;
    last = i;
  }
  return report;
}

bool same_distribution(const Measure& first, const Measure& second) {
  return crossing_scan(first, second).initial_sign == Sign::Zero;
}

int shared_moment_degree(const Measure& first, const Measure& second, int max_k, double tol) {
  if (max_k < 1) throw std::invalid_argument("shared_moment_degree: max_k must be >= 1");
  int l = 0;
  for (int j = 1; j <= max_k; ++j) {
    const double m1 = first.moment(j);
    const double m2 = second.moment(j);
    if (std::abs(m1 - m2) > moment_tol(tol, m1, m2)) break;
    l = j;
  }
  return l;
}

namespace {

// +-x^j witnesses for a moment mismatch at degree j (both are n-convex for j <= n).
std::vector<Witness> monomial_pair(int j, int order, double residual) {
  // residual = moment(first, j) - moment(second, j)
  const double v = std::abs(residual);
  const double sign_up = residual > 0.0 ? 1.0 : -1.0;
  return {
      {TestFunction::monomial(j, order, sign_up), Direction::FirstBelowSecond, v},
      {TestFunction::monomial(j, order, -sign_up), Direction::SecondBelowFirst, v},
  };
}

// Scan x^(s+1) and truncated powers (x - t)_+^s for the largest violation of each
// direction. With moments 1..s equal these functions characterize the s-convex order.
std::vector<Witness> search_witnesses(const Measure& first, const Measure& second, int s) {
  const Interval& I = first.interval();
  std::vector<TestFunction> candidates{TestFunction::monomial(s + 1, s)};
  std::vector<double> knots = first.breakpoints();
  const std::vector<double> more = second.breakpoints();
  knots.insert(knots.end(), more.begin(), more.end());
  for (int i = 1; i < kWitnessKnots; ++i) {
    knots.push_back(I.from_unit(static_cast<double>(i) / kWitnessKnots));
  }
  std::sort(knots.begin(), knots.end());
  knots.erase(std::unique(knots.begin(), knots.end()), knots.end());
  for (double t : knots) {
    if (t < I.b()) candidates.push_back(TestFunction::truncated_power(s, t));
  }

  std::optional<Witness> best_first;  // breaks FirstBelowSecond
  std::optional<Witness> best_second; // breaks SecondBelowFirst
  for (const TestFunction& f : candidates) {
    const double gap = expectation(first, f) - expectation(second, f);
    const double threshold = kWitnessTol * std::max(1.0, f.max_abs(I));
    if (gap > threshold && (!best_first || gap > best_first->violation)) {
      best_first = Witness{f, Direction::FirstBelowSecond, gap};
    }
    if (-gap > threshold && (!best_second || -gap > best_second->violation)) {
      best_second = Witness{f, Direction::SecondBelowFirst, -gap};
    }
  }
  std::vector<Witness> out;
  if (best_first) out.push_back(*best_first);
  if (best_second) out.push_back(*best_second);
  return out;
}

bool refutes(const std::vector<Witness>& ws, Direction d) {
  return std::any_of(ws.begin(), ws.end(), [d](const Witness& w) { return w.refutes == d; });
}

} // namespace

OrderCertificate certify_s_convex_order(const Measure& first, const Measure& second, int s,
                                        double tol) {
  if (s < 1) throw std::invalid_argument("certify_s_convex_order: s must be >= 1");
  require_same_interval(first, second, "certify_s_convex_order");

  OrderCertificate cert;
  cert.s = s;
  cert.crossing_report = crossing_scan(first, second);
  std::ostringstream notes;

  std::optional<int> mismatch;
  for (int j = 1; j <= s; ++j) {
    const double m1 = first.moment(j);
    const double m2 = second.moment(j);
    cert.moment_residuals.push_back(m1 - m2);
    if (!mismatch && std::abs(m1 - m2) > moment_tol(tol, m1, m2)) mismatch = j;
  }

  if (mismatch) {
    cert.verdict = Verdict::Refuted;
    cert.witnesses = monomial_pair(*mismatch, s, cert.moment_residuals[*mismatch - 1]);
    notes << "moment " << *mismatch << " differs; x^" << *mismatch << " and -x^" << *mismatch
          << " are both " << s << "-convex, so neither direction holds";
    cert.notes = notes.str();
    return cert;
  }

  const CrossingReport& cr = cert.crossing_report;
  if (cr.initial_sign == Sign::Zero) {
    cert.verdict = Verdict::Certified;
    cert.equal_measures = true;
    cert.notes = "identical distributions; the order holds in both directions";
    return cert;
  }

  const Sign expected = (s % 2 == 1) ? Sign::Plus : Sign::Minus;
  if (cr.count() == s) {
    cert.verdict = Verdict::Certified;
    cert.direction = cr.initial_sign == expected ? Direction::FirstBelowSecond
                                                 : Direction::SecondBelowFirst;
    notes << "moments 1.." << s << " agree and the CDFs cross exactly " << s << " times";
    cert.notes = notes.str();
    return cert;
  }

  cert.witnesses = search_witnesses(first, second, s);
  const bool first_refuted = refutes(cert.witnesses, Direction::FirstBelowSecond);
  const bool second_refuted = refutes(cert.witnesses, Direction::SecondBelowFirst);
  notes << "moments 1.." << s << " agree but the CDFs cross " << cr.count() << " times (need "
        << s << ")";
  if (shared_moment_degree(first, second, s + 1, tol) >= s + 1) {
    notes << "; moment " << s + 1 << " also agrees, so the measures are " << s
          << "-convex incomparable";
  }
  if (first_refuted) {
    cert.verdict = Verdict::Refuted;
    cert.direction = Direction::FirstBelowSecond;
    notes << (second_refuted ? "; witnesses refute both directions"
                             : "; witness refutes first <= second only");
  } else if (second_refuted) {
    notes << "; witness refutes second <= first, first <= second undecided";
  }
  cert.notes = notes.str();
  return cert;
}

ComparabilityReport incomparability_check(const Measure& first, const Measure& second, int n,
                                          double tol, int max_k) {
  if (n < 1) throw std::invalid_argument("incomparability_check: n must be >= 1");
  require_same_interval(first, second, "incomparability_check");
  ComparabilityReport report;
  report.shared_degree = shared_moment_degree(first, second, std::max(max_k, n + 1), tol);
  if (report.shared_degree < n) {
    const int j = report.shared_degree + 1;
    report.verdict = Comparability::MomentMismatch;
    report.failing_moment = j;
    report.witnesses = monomial_pair(j, n, first.moment(j) - second.moment(j));
  } else if (report.shared_degree >= n + 1 && !same_distribution(first, second)) {
    report.verdict = Comparability::IncomparableCertified;
  } else {
    report.verdict = Comparability::NecessaryConditionsHold;
  }
  return report;
}

std::vector<CdfSample> sample_cdfs(const Measure& first, const Measure& second, int points) {
  require_same_interval(first, second, "sample_cdfs");
  if (points < 2) throw std::invalid_argument("sample_cdfs: need at least 2 points");
  std::vector<CdfSample> out;
  out.reserve(points);
  const Interval& I = first.interval();
  for (int i = 0; i < points; ++i) {
    const double x = i + 1 == points ? I.b() : I.from_unit(static_cast<double>(i) / (points - 1));
    out.push_back({x, first.cdf(x), second.cdf(x)});
  }
  return out;
}

} // namespace quadorder
