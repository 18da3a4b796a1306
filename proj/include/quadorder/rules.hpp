#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "quadorder/interval.hpp"

namespace quadorder {

enum class RuleFamily { Gauss, Lobatto, RadauLeft, RadauRight, Chebyshev3, Custom };

std::string to_string(RuleFamily family);
std::optional<RuleFamily> parse_family(std::string_view name);

constexpr int kMaxRulePoints = 64;

/// Normalized quadrature rule: sum of weights is 1, so applying it averages f over
/// the interval rather than integrating it.
class QuadratureRule {
public:
  /// Validates ordering, positivity and normalization. For Custom rules pass
  /// exactness_degree = std::nullopt to have it measured.
  QuadratureRule(RuleFamily family, Interval interval, std::vector<double> nodes,
                 std::vector<double> weights, std::optional<int> exactness_degree = std::nullopt);

  RuleFamily family() const { return family_; }
  const Interval& interval() const { return interval_; }
  const std::vector<double>& nodes() const { return nodes_; }
  const std::vector<double>& weights() const { return weights_; }
  int exactness_degree() const { return exactness_degree_; }
  std::size_t size() const { return nodes_.size(); }

  template <class F>
  double apply(F&& f) const {
    double acc = 0.0;
    for (std::size_t i = 0; i < nodes_.size(); ++i) acc += weights_[i] * f(nodes_[i]);
    return acc;
  }

private:
  RuleFamily family_;
  Interval interval_;
  std::vector<double> nodes_;
  std::vector<double> weights_;
  int exactness_degree_ = 0;
};

/// m-point Gauss-Legendre, exact to degree 2m-1.
QuadratureRule gauss(int m, Interval interval);
/// m-point Lobatto (both endpoints are nodes), exact to degree 2m-3.
QuadratureRule lobatto(int m, Interval interval);
/// m-point Radau with a as a node, exact to degree 2m-2.
QuadratureRule radau_left(int m, Interval interval);
/// Mirror image of radau_left through the midpoint; b is a node.
QuadratureRule radau_right(int m, Interval interval);
/// Equal-weight three-point Chebyshev rule, exact to degree 3.
QuadratureRule chebyshev3(Interval interval);

/// Dispatch by family. `points` is ignored for Chebyshev3 (must be 3 if given).
QuadratureRule make_rule(RuleFamily family, int points, Interval interval);

/// Largest k <= 2*size()+2 such that the rule reproduces the uniform moments of
/// degree 0..k to relative accuracy 1e-10. Returns -1 if even the mass is off.
int verify_exactness(const QuadratureRule& rule);

} // namespace quadorder
