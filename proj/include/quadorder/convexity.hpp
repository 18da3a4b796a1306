#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "quadorder/interval.hpp"
#include "quadorder/measure.hpp"

namespace quadorder {

/// f[x_1, ..., x_k] by the classical recurrence. Points must be pairwise distinct
/// (any order).
double divided_difference(std::span<const double> points, std::span<const double> values);

/// Convex order check on a grid: every divided difference over n+2 consecutive grid
/// points must be >= -tol * S, where S = sum_i |f(x_i)| / prod_{j != i} |x_i - x_j| is
/// the magnitude the difference quotient reaches before cancellation. Scaling by S
/// keeps the test meaningful as rounding grows like h^-(n+1) on fine grids.
bool is_n_convex_on_grid(const std::function<double(double)>& f, int n,
                         std::span<const double> grid, double tol = 1e-9);

/// n equispaced points covering [a, b] (both endpoints included), n >= 2.
std::vector<double> uniform_grid(const Interval& interval, int n);

/// Member of a family of functions that are n-convex by construction.
struct TestFunction {
  enum class Kind { Monomial, TruncatedPower, Exponential };

  Kind kind = Kind::Monomial;
  int degree = 0;     // Monomial: exponent k; TruncatedPower: exponent n
  double knot = 0.0;  // TruncatedPower: t in max(x - t, 0)^n
  double rate = 1.0;  // Exponential: lambda in exp(lambda x)
  double sign = 1.0;  // Monomial only: +x^k or -x^k
  int convexity_order = 0;

  static TestFunction monomial(int k, int order, double sign = 1.0);
  static TestFunction truncated_power(int n, double knot);
  static TestFunction exponential(double rate, int order);

  double operator()(double x) const;
  /// max |f| over the interval (attained at an endpoint for every kind here).
  double max_abs(const Interval& interval) const;
  std::string describe() const;
};

/// Deterministic-under-seed mix of monomials x^k (k in n+1..n+5, restricted to
/// k-n-1 even when the interval reaches below zero), truncated powers (x-t)_+^n with t
/// uniform in (a, b), and exponentials with rate in (0, 3].
std::vector<TestFunction> sample_test_functions(int n, int count, std::uint64_t seed,
                                                const Interval& interval);

/// int f dmu. Closed form for monomials and truncated powers; exponentials use a
/// 64-point Gauss-Legendre rule per density piece, evaluated in long double.
double expectation(const Measure& measure, const TestFunction& f);

} // namespace quadorder
