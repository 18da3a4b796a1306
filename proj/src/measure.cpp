#include "quadorder/measure.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "quadorder/polynomial.hpp"
#include "quadorder/rules.hpp"

namespace quadorder {

namespace {

constexpr int kNonnegativityGrid = 512;
constexpr double kNonnegativityTol = -1e-12;
constexpr double kMassTol = 1e-12;

} // namespace

DensityPiece::DensityPiece(Interval support, std::vector<double> coeffs)
    : support_(support), coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) coeffs_.push_back(0.0);
  for (double c : coeffs_) {
    if (!std::isfinite(c)) throw std::invalid_argument("DensityPiece: non-finite coefficient");
  }
  for (int i = 0; i <= kNonnegativityGrid; ++i) {
    const double x = (i == kNonnegativityGrid)
                         ? support_.b()
                         : support_.from_unit(static_cast<double>(i) / kNonnegativityGrid);
    if (poly::evaluate(coeffs_, x) < kNonnegativityTol) {
      throw std::invalid_argument("DensityPiece: density negative at x = " + std::to_string(x));
    }
  }
  antiderivative_ = poly::antiderivative(coeffs_);
  base_ = poly::evaluate(antiderivative_, support_.a());
}

double DensityPiece::density(double x) const {
  if (!support_.contains(x)) return 0.0;
  return poly::evaluate(coeffs_, x);
}

double DensityPiece::mass() const { return mass_up_to(support_.b()); }

double DensityPiece::mass_up_to(double x) const {
  if (x <= support_.a()) return 0.0;
  x = std::min(x, support_.b());
  return poly::evaluate(antiderivative_, x) - base_;
}

double DensityPiece::moment(int k) const {
  return poly::integrate_times_power(coeffs_, k, support_.a(), support_.b());
}

Measure::Measure(Interval interval, std::vector<Atom> atoms, std::vector<DensityPiece> pieces)
    : interval_(interval), pieces_(std::move(pieces)) {
  std::sort(atoms.begin(), atoms.end(), [](const Atom& l, const Atom& r) { return l.x < r.x; });
  for (const Atom& atom : atoms) {
    if (!(atom.w > 0.0) || !std::isfinite(atom.w)) {
      throw std::invalid_argument("Measure: atom weight must be positive, got " +
                                  std::to_string(atom.w));
    }
    if (!interval_.contains(atom.x)) {
      throw std::invalid_argument("Measure: atom at " + std::to_string(atom.x) +
                                  " outside the interval");
    }
    if (!atoms_.empty() && atoms_.back().x == atom.x) {
      atoms_.back().w += atom.w;
    } else {
      atoms_.push_back(atom);
    }
  }

  std::sort(pieces_.begin(), pieces_.end(), [](const DensityPiece& l, const DensityPiece& r) {
    return l.support().a() < r.support().a();
  });
  for (std::size_t i = 0; i < pieces_.size(); ++i) {
    const Interval& s = pieces_[i].support();
    if (s.a() < interval_.a() || s.b() > interval_.b()) {
      throw std::invalid_argument("Measure: density piece support outside the interval");
    }
    if (i > 0 && pieces_[i - 1].support().b() > s.a()) {
      throw std::invalid_argument("Measure: density pieces overlap");
    }
  }

  for (const Atom& atom : atoms_) total_mass_ += atom.w;
  for (const DensityPiece& p : pieces_) total_mass_ += p.mass();
}

double Measure::moment(int k) const {
  if (k < 0) throw std::invalid_argument("Measure::moment: k must be nonnegative");
  double acc = 0.0;
  for (const Atom& atom : atoms_) acc += atom.w * poly::power(atom.x, k);
  for (const DensityPiece& p : pieces_) acc += p.moment(k);
  return acc;
}

double Measure::continuous_cdf(double x) const {
  double acc = 0.0;
  for (const DensityPiece& p : pieces_) {
    if (x <= p.support().a()) break;
    acc += p.mass_up_to(x);
  }
  return acc;
}

double Measure::cdf(double x) const {
  if (x < interval_.a()) return 0.0;
  if (x >= interval_.b()) return total_mass_;
  double acc = continuous_cdf(x);
  for (const Atom& atom : atoms_) {
    if (atom.x > x) break;
    acc += atom.w;
  }
  return acc;
}

double Measure::cdf_left(double x) const {
  if (x <= interval_.a()) return 0.0;
  if (x > interval_.b()) return total_mass_;
  double acc = continuous_cdf(x);
  for (const Atom& atom : atoms_) {
    if (atom.x >= x) break;
    acc += atom.w;
  }
  return acc;
}

std::vector<double> Measure::breakpoints() const {
  std::vector<double> pts{interval_.a(), interval_.b()};
  for (const Atom& atom : atoms_) pts.push_back(atom.x);
  for (const DensityPiece& p : pieces_) {
    pts.push_back(p.support().a());
    pts.push_back(p.support().b());
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

Measure uniform(Interval interval) {
  return Measure(interval, {}, {DensityPiece(interval, {1.0 / interval.length()})});
}

Measure dirac(Interval interval, double x) { return Measure(interval, {{x, 1.0}}); }

Measure mix(std::span<const std::pair<double, Measure>> components) {
  if (components.empty()) throw std::invalid_argument("mix: no components");
  const Interval interval = components.front().second.interval();
  double weight_sum = 0.0;
  for (const auto& [w, m] : components) {
    if (!(w > 0.0)) throw std::invalid_argument("mix: weights must be positive");
    if (!(m.interval() == interval)) throw std::invalid_argument("mix: mismatched intervals");
    weight_sum += w;
  }
  if (std::abs(weight_sum - 1.0) > kMassTol) {
    throw std::invalid_argument("mix: weights sum to " + std::to_string(weight_sum) + ", not 1");
  }

  std::vector<Atom> atoms;
  std::vector<double> cuts;
  for (const auto& [w, m] : components) {
    for (const Atom& atom : m.atoms()) atoms.push_back({atom.x, w * atom.w});
    for (const DensityPiece& p : m.pieces()) {
      cuts.push_back(p.support().a());
      cuts.push_back(p.support().b());
    }
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  // Common refinement: on each elementary cell sum the scaled polynomials covering it.
  std::vector<DensityPiece> pieces;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double lo = cuts[i];
    const double hi = cuts[i + 1];
    std::vector<double> sum;
    for (const auto& [w, m] : components) {
      for (const DensityPiece& p : m.pieces()) {
        if (p.support().a() <= lo && hi <= p.support().b()) {
          if (sum.size() < p.coeffs().size()) sum.resize(p.coeffs().size(), 0.0);
          for (std::size_t j = 0; j < p.coeffs().size(); ++j) sum[j] += w * p.coeffs()[j];
        }
      }
    }
    if (std::any_of(sum.begin(), sum.end(), [](double c) { return c != 0.0; })) {
      pieces.emplace_back(Interval(lo, hi), std::move(sum));
    }
  }
  return Measure(interval, std::move(atoms), std::move(pieces));
}

Measure from_rule(const QuadratureRule& rule) {
  std::vector<Atom> atoms;
  atoms.reserve(rule.size());
  for (std::size_t i = 0; i < rule.size(); ++i) {
    if (!(rule.weights()[i] > 0.0)) {
      throw std::invalid_argument("from_rule: nonpositive weight in rule");
    }
    atoms.push_back({rule.nodes()[i], rule.weights()[i]});
  }
  return Measure(rule.interval(), std::move(atoms));
}

double uniform_moment(const Interval& interval, int k) {
  const double a = interval.a();
  const double b = interval.b();
  return (poly::power(b, k + 1) - poly::power(a, k + 1)) / ((k + 1) * interval.length());
}

} // namespace quadorder
