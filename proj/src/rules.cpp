#include "quadorder/rules.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "quadorder/measure.hpp"
#include "quadorder/polynomial.hpp"
#include "quadorder/tridiagonal.hpp"

namespace quadorder {

namespace {

constexpr double kWeightSumTol = 1e-13;
constexpr double kExactnessTol = 1e-10;

// Monic Legendre recurrence on [-1, 1]: alpha_k = 0, beta_k = k^2 / (4k^2 - 1).
double legendre_beta(int k) {
  const double kk = static_cast<double>(k) * k;
  return kk / (4.0 * kk - 1.0);
}

// Monic Legendre values p_0..p_deg at x.
std::vector<double> monic_legendre(int deg, double x) {
  std::vector<double> p(deg + 1);
  p[0] = 1.0;
  if (deg >= 1) p[1] = x;
  for (int k = 1; k < deg; ++k) p[k + 1] = x * p[k] - legendre_beta(k) * p[k - 1];
  return p;
}

void check_points(int m, int lowest, const char* who) {
  if (m < lowest || m > kMaxRulePoints) {
    throw std::invalid_argument(std::string(who) + ": number of points must be in [" +
                                std::to_string(lowest) + ", " + std::to_string(kMaxRulePoints) +
                                "], got " + std::to_string(m));
  }
}

struct CanonicalRule {
  std::vector<double> t; // nodes on [-1, 1], ascending
  std::vector<double> w; // normalized weights
};

CanonicalRule golub_welsch(std::vector<double> diag, std::vector<double> offdiag) {
  TridiagonalEigen eig = tridiagonal_eigen(std::move(diag), std::move(offdiag));
  CanonicalRule rule{std::move(eig.values), {}};
  rule.w.reserve(rule.t.size());
  for (double v : eig.first_components) rule.w.push_back(v * v);
  return rule;
}

std::vector<double> legendre_offdiag(int m) {
  std::vector<double> off;
  for (int k = 1; k < m; ++k) off.push_back(std::sqrt(legendre_beta(k)));
  return off;
}

// Gauss and Lobatto node sets are symmetric; enforce it exactly.
void symmetrize(CanonicalRule& r) {
  const std::size_t m = r.t.size();
  for (std::size_t i = 0; i < m / 2; ++i) {
    const std::size_t j = m - 1 - i;
    const double t = 0.5 * (r.t[j] - r.t[i]);
    const double w = 0.5 * (r.w[i] + r.w[j]);
    r.t[i] = -t;
    r.t[j] = t;
    r.w[i] = w;
    r.w[j] = w;
  }
  if (m % 2 == 1) r.t[m / 2] = 0.0;
}

void normalize(std::vector<double>& w) {
  const double sum = std::accumulate(w.begin(), w.end(), 0.0);
  for (double& x : w) x /= sum;
}

QuadratureRule map_to_interval(RuleFamily family, CanonicalRule r, Interval interval,
                               int degree, bool pin_left, bool pin_right) {
  normalize(r.w);
  std::vector<double> nodes;
  nodes.reserve(r.t.size());
  for (double t : r.t) nodes.push_back(interval.from_unit(0.5 * (1.0 + t)));
  if (pin_left) nodes.front() = interval.a();
  if (pin_right) nodes.back() = interval.b();
  return QuadratureRule(family, interval, std::move(nodes), std::move(r.w), degree);
}

CanonicalRule radau_left_canonical(int m) {
  std::vector<double> diag(m, 0.0);
  // Golub: replace the last diagonal entry so that -1 is an eigenvalue.
  const double x0 = -1.0;
  const std::vector<double> p = monic_legendre(m - 1, x0);
  const double prev = (m >= 2) ? p[m - 2] : 0.0;
  const double beta = (m >= 2) ? legendre_beta(m - 1) : 0.0;
  diag[m - 1] = x0 - beta * prev / p[m - 1];
  CanonicalRule r = golub_welsch(std::move(diag), legendre_offdiag(m));
  r.t.front() = -1.0;
  return r;
}

} // namespace

std::string to_string(RuleFamily family) {
  switch (family) {
  case RuleFamily::Gauss: return "gauss";
  case RuleFamily::Lobatto: return "lobatto";
  case RuleFamily::RadauLeft: return "radau-left";
  case RuleFamily::RadauRight: return "radau-right";
  case RuleFamily::Chebyshev3: return "chebyshev3";
  case RuleFamily::Custom: return "custom";
  }
  return "custom";
}

std::optional<RuleFamily> parse_family(std::string_view name) {
  for (RuleFamily f : {RuleFamily::Gauss, RuleFamily::Lobatto, RuleFamily::RadauLeft,
                       RuleFamily::RadauRight, RuleFamily::Chebyshev3, RuleFamily::Custom}) {
    if (to_string(f) == name) return f;
  }
  return std::nullopt;
}

QuadratureRule::QuadratureRule(RuleFamily family, Interval interval, std::vector<double> nodes,
                               std::vector<double> weights, std::optional<int> exactness_degree)
    : family_(family), interval_(interval), nodes_(std::move(nodes)), weights_(std::move(weights)) {
  if (nodes_.empty() || nodes_.size() != weights_.size()) {
    throw std::invalid_argument("QuadratureRule: need equally many (>= 1) nodes and weights");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (!interval_.contains(nodes_[i])) {
      throw std::invalid_argument("QuadratureRule: node outside the interval");
    }
    if (i > 0 && !(nodes_[i - 1] < nodes_[i])) {
      throw std::invalid_argument("QuadratureRule: nodes must be strictly increasing");
    }
    if (!(weights_[i] > 0.0)) {
      throw std::invalid_argument("QuadratureRule: weights must be positive");
    }
    sum += weights_[i];
  }
  if (std::abs(sum - 1.0) > kWeightSumTol) {
    throw std::invalid_argument("QuadratureRule: weights sum to " + std::to_string(sum) +
                                ", expected 1");
  }
  exactness_degree_ = exactness_degree ? *exactness_degree : verify_exactness(*this);
}

QuadratureRule gauss(int m, Interval interval) {
  check_points(m, 1, "gauss");
  CanonicalRule r = golub_welsch(std::vector<double>(m, 0.0), legendre_offdiag(m));
  symmetrize(r);
  return map_to_interval(RuleFamily::Gauss, std::move(r), interval, 2 * m - 1, false, false);
}

QuadratureRule lobatto(int m, Interval interval) {
  check_points(m, 2, "lobatto");
  // Golub: modify the last diagonal and off-diagonal entries so that both -1 and 1
  // are eigenvalues. Solve
  //   alpha p_{m-1}(x) + beta p_{m-2}(x) = x p_{m-1}(x),  x = -1, 1.
  const std::vector<double> pl = monic_legendre(m - 1, -1.0);
  const std::vector<double> pr = monic_legendre(m - 1, 1.0);
  const double a11 = pl[m - 1], a12 = pl[m - 2];
  const double a21 = pr[m - 1], a22 = pr[m - 2];
  const double r1 = -pl[m - 1], r2 = pr[m - 1];
  const double det = a11 * a22 - a12 * a21;
  const double alpha = (r1 * a22 - a12 * r2) / det;
  const double beta = (a11 * r2 - r1 * a21) / det;

  std::vector<double> diag(m, 0.0);
  diag[m - 1] = alpha;
  std::vector<double> off = legendre_offdiag(m);
  off[m - 2] = std::sqrt(beta);
  CanonicalRule r = golub_welsch(std::move(diag), std::move(off));
  r.t.front() = -1.0;
  r.t.back() = 1.0;
  symmetrize(r);
  return map_to_interval(RuleFamily::Lobatto, std::move(r), interval, 2 * m - 3, true, true);
}

QuadratureRule radau_left(int m, Interval interval) {
  check_points(m, 1, "radau_left");
  return map_to_interval(RuleFamily::RadauLeft, radau_left_canonical(m), interval, 2 * m - 2,
                         true, false);
}

QuadratureRule radau_right(int m, Interval interval) {
  check_points(m, 1, "radau_right");
  CanonicalRule left = radau_left_canonical(m);
  CanonicalRule r;
  for (std::size_t i = left.t.size(); i-- > 0;) {
    r.t.push_back(-left.t[i]);
    r.w.push_back(left.w[i]);
  }
  return map_to_interval(RuleFamily::RadauRight, std::move(r), interval, 2 * m - 2, false, true);
}

QuadratureRule chebyshev3(Interval interval) {
  const double h = 1.0 / std::sqrt(2.0);
  CanonicalRule r{{-h, 0.0, h}, {1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0}};
  return map_to_interval(RuleFamily::Chebyshev3, std::move(r), interval, 3, false, false);
}

QuadratureRule make_rule(RuleFamily family, int points, Interval interval) {
  switch (family) {
  case RuleFamily::Gauss: return gauss(points, interval);
  case RuleFamily::Lobatto: return lobatto(points, interval);
  case RuleFamily::RadauLeft: return radau_left(points, interval);
  case RuleFamily::RadauRight: return radau_right(points, interval);
  case RuleFamily::Chebyshev3:
    if (points != 3) throw std::invalid_argument("chebyshev3 has exactly 3 points");
    return chebyshev3(interval);
  case RuleFamily::Custom: break;
  }
  throw std::invalid_argument("make_rule: custom rules need explicit nodes and weights");
}

int verify_exactness(const QuadratureRule& rule) {
  const int limit = 2 * static_cast<int>(rule.size()) + 2;
  int degree = -1;
  for (int j = 0; j <= limit; ++j) {
    const double exact = uniform_moment(rule.interval(), j);
    const double got = rule.apply([j](double x) { return poly::power(x, j); });
    if (std::abs(got - exact) > kExactnessTol * std::max(1.0, std::abs(exact))) break;
    degree = j;
  }
  return degree;
}

} // namespace quadorder
