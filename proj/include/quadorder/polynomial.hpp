#pragma once

// Helpers for polynomials stored as ascending coefficient vectors, p(x) = sum c[i] x^i.
// Templated on the scalar so the extended-precision oracle can reuse them.

#include <cstddef>
#include <vector>

namespace quadorder::poly {

template <class Real>
Real evaluate(const std::vector<Real>& c, const Real& x) {
  Real acc = 0;
  for (std::size_t i = c.size(); i-- > 0;) {
    acc = acc * x + c[i];
  }
  return acc;
}

template <class Real>
Real power(const Real& x, int k) {
  Real r = 1;
  for (int i = 0; i < k; ++i) r *= x;
  return r;
}

/// Antiderivative with zero constant term.
template <class Real>
std::vector<Real> antiderivative(const std::vector<Real>& c) {
  std::vector<Real> out(c.size() + 1, Real(0));
  for (std::size_t i = 0; i < c.size(); ++i) {
    out[i + 1] = c[i] / Real(static_cast<double>(i + 1));
  }
  return out;
}

/// int_lo^hi p(x) x^k dx, term by term.
template <class Real>
Real integrate_times_power(const std::vector<Real>& c, int k, const Real& lo, const Real& hi) {
  Real acc = 0;
  for (std::size_t i = 0; i < c.size(); ++i) {
    const int e = static_cast<int>(i) + k + 1;
    acc += c[i] * (power(hi, e) - power(lo, e)) / Real(e);
  }
  return acc;
}

template <class Real>
Real integrate(const std::vector<Real>& c, const Real& lo, const Real& hi) {
  return integrate_times_power(c, 0, lo, hi);
}

/// Coefficients of q(u) = p(u + t) (Taylor shift).
template <class Real>
std::vector<Real> shift(std::vector<Real> c, const Real& t) {
  const std::size_t n = c.size();
  // repeated synthetic division
  for (std::size_t i = 0; i + 1 < n; ++i) {
    for (std::size_t j = n - 1; j-- > i;) {
      c[j] += t * c[j + 1];
    }
  }
  return c;
}

} // namespace quadorder::poly
