#include "quadorder/tridiagonal.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace quadorder {

namespace {

constexpr double kOffdiagTol = 1e-15;
constexpr int kMaxSweeps = 64;

} // namespace

TridiagonalEigen tridiagonal_eigen(std::vector<double> d, std::vector<double> offdiag) {
  const int n = static_cast<int>(d.size());
  if (n == 0) return {};
  if (static_cast<int>(offdiag.size()) != n - 1) {
    throw std::invalid_argument("tridiagonal_eigen: off-diagonal must have n-1 entries");
  }
  std::vector<double> e(offdiag);
  e.push_back(0.0);
  std::vector<double> z(n, 0.0);
  z[0] = 1.0;

  for (int l = 0; l < n; ++l) {
    int sweeps = 0;
    int m = l;
    do {
      for (m = l; m < n - 1; ++m) {
        const double scale = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m]) <= kOffdiagTol * scale) break;
      }
      if (m == l) break;
      if (++sweeps > kMaxSweeps) {
        throw std::runtime_error("tridiagonal_eigen: no convergence");
      }
      double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
      double r = std::hypot(g, 1.0);
      g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
      double s = 1.0;
      double c = 1.0;
      double p = 0.0;
      int i = m - 1;
      bool underflow = false;
      for (; i >= l; --i) {
        double f = s * e[i];
        const double b = c * e[i];
        r = std::hypot(f, g);
        e[i + 1] = r;
        if (r == 0.0) {
          d[i + 1] -= p;
          e[m] = 0.0;
          underflow = true;
          break;
        }
        s = f / r;
        c = g / r;
        g = d[i + 1] - p;
        r = (d[i] - g) * s + 2.0 * c * b;
        p = s * r;
        d[i + 1] = g + p;
        g = c * r - b;
        f = z[i + 1];
        z[i + 1] = s * z[i] + c * f;
        z[i] = c * z[i] - s * f;
      }
      if (underflow) continue;
      d[l] -= p;
      e[l] = g;
      e[m] = 0.0;
    } while (m != l);
  }

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int i, int j) { return d[i] < d[j]; });
  TridiagonalEigen out;
  out.values.reserve(n);
  out.first_components.reserve(n);
  for (int k : order) {
    out.values.push_back(d[k]);
    out.first_components.push_back(z[k]);
  }
  return out;
}

} // namespace quadorder
