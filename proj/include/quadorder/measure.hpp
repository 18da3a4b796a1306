#pragma once

#include <span>
#include <utility>
#include <vector>

#include "quadorder/interval.hpp"

namespace quadorder {

class QuadratureRule;

/// Point mass of weight w at x.
struct Atom {
  double x;
  double w;
};

/// Polynomial density on a subinterval. Coefficients are in the global variable x,
/// ascending degree. Nonnegativity is checked on construction.
class DensityPiece {
public:
  DensityPiece(Interval support, std::vector<double> coeffs);

  const Interval& support() const { return support_; }
  const std::vector<double>& coeffs() const { return coeffs_; }

  double density(double x) const;
  double mass() const;
  /// int_c^x p, with x clamped to the support.
  double mass_up_to(double x) const;
  double moment(int k) const;

private:
  Interval support_;
  std::vector<double> coeffs_;
  std::vector<double> antiderivative_;
  double base_ = 0.0;
};

/// Finite mixture of atoms and polynomial density pieces on a closed interval.
///
/// Atoms are kept sorted with identical positions merged; pieces are sorted and must
/// have disjoint interiors. Instances are immutable.
class Measure {
public:
  Measure(Interval interval, std::vector<Atom> atoms, std::vector<DensityPiece> pieces = {});

  const Interval& interval() const { return interval_; }
  std::span<const Atom> atoms() const { return atoms_; }
  std::span<const DensityPiece> pieces() const { return pieces_; }

  double total_mass() const { return total_mass_; }
  double moment(int k) const;

  /// Right-continuous CDF; 0 left of a, total mass right of b.
  double cdf(double x) const;
  /// Left limit F(x-).
  double cdf_left(double x) const;

  /// Sorted distinct points where the CDF may jump or change its polynomial form,
  /// always including both endpoints.
  std::vector<double> breakpoints() const;

private:
  double continuous_cdf(double x) const;

  Interval interval_;
  std::vector<Atom> atoms_;
  std::vector<DensityPiece> pieces_;
  double total_mass_ = 0.0;
};

/// Normalized Lebesgue measure on I.
Measure uniform(Interval interval);

/// Unit point mass at x.
Measure dirac(Interval interval, double x);

/// Convex combination; weights positive and summing to 1 within 1e-12.
Measure mix(std::span<const std::pair<double, Measure>> components);

/// Discrete measure carried by the nodes of a rule.
Measure from_rule(const QuadratureRule& rule);

/// k-th moment of the normalized Lebesgue measure on I.
double uniform_moment(const Interval& interval, int k);

} // namespace quadorder
