#pragma once

#include <stdexcept>
#include <string>

namespace quadorder {

/// Closed interval [a, b] with a < b.
class Interval {
public:
  Interval(double a, double b) : a_(a), b_(b) {
    if (!(a < b)) {
      throw std::invalid_argument("Interval: need a < b, got [" + std::to_string(a) + ", " +
                                  std::to_string(b) + "]");
    }
  }

  double a() const { return a_; }
  double b() const { return b_; }
  double length() const { return b_ - a_; }
  double midpoint() const { return 0.5 * (a_ + b_); }
  bool contains(double x) const { return a_ <= x && x <= b_; }

  /// Image of u in [0, 1] under the affine map onto this interval.
  double from_unit(double u) const { return a_ + (b_ - a_) * u; }

  bool operator==(const Interval&) const = default;

private:
  double a_;
  double b_;
};

} // namespace quadorder
