#include "quadorder/convexity.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "quadorder/polynomial.hpp"
#include "quadorder/random.hpp"

namespace quadorder {

namespace {

constexpr int kExpQuadraturePoints = 64;

struct LongDoubleGauss {
  std::vector<long double> t; // on [-1, 1]
  std::vector<long double> w; // sum to 2
};

// Legendre roots by Newton from the Chebyshev-like initial guess.
LongDoubleGauss make_long_double_gauss(int m) {
  LongDoubleGauss g{std::vector<long double>(m), std::vector<long double>(m)};
  const long double pi = std::numbers::pi_v<long double>;
  for (int i = 0; i < (m + 1) / 2; ++i) {
    long double z = std::cos(pi * (i + 0.75L) / (m + 0.5L));
    long double dp = 0.0L;
    for (int iter = 0; iter < 100; ++iter) {
      long double p0 = 1.0L, p1 = z;
      for (int k = 2; k <= m; ++k) {
        const long double p2 = ((2.0L * k - 1.0L) * z * p1 - (k - 1.0L) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = m * (z * p1 - p0) / (z * z - 1.0L);
      const long double dz = p1 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-19L) break;
    }
    g.t[i] = -z;
    g.t[m - 1 - i] = z;
    const long double w = 2.0L / ((1.0L - z * z) * dp * dp);
    g.w[i] = w;
    g.w[m - 1 - i] = w;
  }
  return g;
}

const LongDoubleGauss& exp_rule() {
  static const LongDoubleGauss rule = make_long_double_gauss(kExpQuadraturePoints);
  return rule;
}

double truncated_power_integral(const DensityPiece& piece, int n, double t) {
  const double lo = std::max(piece.support().a(), t);
  const double hi = piece.support().b();
  if (hi <= lo) return 0.0;
  // q(u) = p(u + t); integrate q(u) u^n over [lo - t, hi - t].
  const std::vector<double> q = poly::shift(piece.coeffs(), t);
  return poly::integrate_times_power(q, n, lo - t, hi - t);
}

double exponential_integral(const DensityPiece& piece, double rate) {
  const LongDoubleGauss& g = exp_rule();
  const long double c = piece.support().a();
  const long double d = piece.support().b();
  const long double half = 0.5L * (d - c);
  const long double mid = 0.5L * (d + c);
  std::vector<long double> coeffs(piece.coeffs().begin(), piece.coeffs().end());
  long double acc = 0.0L;
  for (std::size_t i = 0; i < g.t.size(); ++i) {
    const long double x = mid + half * g.t[i];
    acc += g.w[i] * poly::evaluate(coeffs, x) * std::exp(static_cast<long double>(rate) * x);
  }
  return static_cast<double>(half * acc);
}

} // namespace

double divided_difference(std::span<const double> points, std::span<const double> values) {
  if (points.empty() || points.size() != values.size()) {
    throw std::invalid_argument("divided_difference: need matching nonempty points and values");
  }
  const std::size_t n = points.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (points[i] == points[j]) {
        throw std::invalid_argument("divided_difference: duplicate point");
      }
    }
  }
  std::vector<double> table(values.begin(), values.end());
  // After pass `level`, table[i] = f[x_i, ..., x_{i+level}].
  for (std::size_t level = 1; level < n; ++level) {
    for (std::size_t i = 0; i + level < n; ++i) {
      table[i] = (table[i + 1] - table[i]) / (points[i + level] - points[i]);
    }
  }
  return table[0];
}

bool is_n_convex_on_grid(const std::function<double(double)>& f, int n,
                         std::span<const double> grid, double tol) {
  if (n < 0) throw std::invalid_argument("is_n_convex_on_grid: n must be nonnegative");
  const std::size_t window = static_cast<std::size_t>(n) + 2;
  if (grid.size() < window) {
    throw std::invalid_argument("is_n_convex_on_grid: grid needs at least n+2 points");
  }
  std::vector<double> values(grid.size());
  std::transform(grid.begin(), grid.end(), values.begin(), [&](double x) { return f(x); });

  for (std::size_t start = 0; start + window <= grid.size(); ++start) {
    const auto pts = grid.subspan(start, window);
    const auto vals = std::span<const double>(values).subspan(start, window);
    double scale = 0.0;
    for (std::size_t i = 0; i < window; ++i) {
      double denom = 1.0;
      for (std::size_t j = 0; j < window; ++j) {
        if (j != i) denom *= std::abs(pts[i] - pts[j]);
      }
      scale += std::abs(vals[i]) / denom;
    }
    if (divided_difference(pts, vals) < -tol * scale) return false;
  }
  return true;
}

std::vector<double> uniform_grid(const Interval& interval, int n) {
  if (n < 2) throw std::invalid_argument("uniform_grid: need at least 2 points");
  std::vector<double> grid(n);
  for (int i = 0; i < n; ++i) grid[i] = interval.from_unit(static_cast<double>(i) / (n - 1));
  grid.back() = interval.b();
  return grid;
}

TestFunction TestFunction::monomial(int k, int order, double sign) {
  TestFunction f;
  f.kind = Kind::Monomial;
  f.degree = k;
  f.sign = sign;
  f.convexity_order = order;
  return f;
}

TestFunction TestFunction::truncated_power(int n, double knot) {
  TestFunction f;
  f.kind = Kind::TruncatedPower;
  f.degree = n;
  f.knot = knot;
  f.convexity_order = n;
  return f;
}

TestFunction TestFunction::exponential(double rate, int order) {
  TestFunction f;
  f.kind = Kind::Exponential;
  f.rate = rate;
  f.convexity_order = order;
  return f;
}

double TestFunction::operator()(double x) const {
  switch (kind) {
  case Kind::Monomial: return sign * poly::power(x, degree);
  case Kind::TruncatedPower: return x >= knot ? poly::power(x - knot, degree) : 0.0;
  case Kind::Exponential: return std::exp(rate * x);
  }
  return 0.0;
}

double TestFunction::max_abs(const Interval& interval) const {
  return std::max(std::abs((*this)(interval.a())), std::abs((*this)(interval.b())));
}

std::string TestFunction::describe() const {
  std::ostringstream os;
  os.precision(17);
  switch (kind) {
  case Kind::Monomial: os << (sign < 0 ? "-" : "") << "x^" << degree; break;
  case Kind::TruncatedPower: os << "max(x - " << knot << ", 0)^" << degree; break;
  case Kind::Exponential: os << "exp(" << rate << " x)"; break;
  }
  return os.str();
}

std::vector<TestFunction> sample_test_functions(int n, int count, std::uint64_t seed,
                                                const Interval& interval) {
  if (count < 1) throw std::invalid_argument("sample_test_functions: count must be >= 1");
  if (n < 0) throw std::invalid_argument("sample_test_functions: n must be nonnegative");
  std::mt19937_64 rng = make_stream(seed, 0x7e57);
  std::uniform_int_distribution<int> pick_kind(0, 2);
  std::uniform_int_distribution<int> pick_offset(1, 5);
  std::uniform_int_distribution<int> pick_even_offset(0, 2);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  std::vector<TestFunction> out;
  out.reserve(count);
  for (int i = 0; i < count; ++i) {
    switch (pick_kind(rng)) {
    case 0: {
      // (n+1)-st derivative of x^k is c x^(k-n-1); keep it nonnegative on the interval.
      const int k = interval.a() >= 0.0 ? n + pick_offset(rng) : n + 1 + 2 * pick_even_offset(rng);
      out.push_back(TestFunction::monomial(k, n));
      break;
    }
    case 1: {
      double u = unit(rng);
      while (u == 0.0) u = unit(rng);
      out.push_back(TestFunction::truncated_power(n, interval.from_unit(u)));
      break;
    }
    default: {
      const double rate = 3.0 * (1.0 - unit(rng)); // (0, 3]
      out.push_back(TestFunction::exponential(rate, n));
      break;
    }
    }
  }
  return out;
}

double expectation(const Measure& measure, const TestFunction& f) {
  double acc = 0.0;
  for (const Atom& atom : measure.atoms()) acc += atom.w * f(atom.x);
  for (const DensityPiece& piece : measure.pieces()) {
    switch (f.kind) {
    case TestFunction::Kind::Monomial: acc += f.sign * piece.moment(f.degree); break;
    case TestFunction::Kind::TruncatedPower:
      acc += truncated_power_integral(piece, f.degree, f.knot);
      break;
    case TestFunction::Kind::Exponential: acc += exponential_integral(piece, f.rate); break;
    }
  }
  return acc;
}

} // namespace quadorder
