#include "quadorder/oracle.hpp"

#include <stdexcept>

#include "quadorder/polynomial.hpp"

namespace quadorder {

namespace {

std::vector<HighPrecision> widen(const std::vector<double>& c) {
  return std::vector<HighPrecision>(c.begin(), c.end());
}

} // namespace

HighPrecision oracle_integral(const Measure& mu, const std::vector<double>& polynomial) {
  const std::vector<HighPrecision> p = widen(polynomial);
  HighPrecision acc = 0;
  for (const Atom& atom : mu.atoms()) {
    acc += HighPrecision(atom.w) * poly::evaluate(p, HighPrecision(atom.x));
  }
  for (const DensityPiece& piece : mu.pieces()) {
    const std::vector<HighPrecision> density = widen(piece.coeffs());
    const HighPrecision lo = piece.support().a();
    const HighPrecision hi = piece.support().b();
    for (std::size_t k = 0; k < p.size(); ++k) {
      if (p[k] == 0) continue;
      acc += p[k] * poly::integrate_times_power(density, static_cast<int>(k), lo, hi);
    }
  }
  return acc;
}

HighPrecision oracle_integral(const Measure& mu, const TestFunction& f) {
  switch (f.kind) {
  case TestFunction::Kind::Monomial: {
    std::vector<double> p(f.degree + 1, 0.0);
    p[f.degree] = f.sign;
    return oracle_integral(mu, p);
  }
  case TestFunction::Kind::TruncatedPower: {
    const HighPrecision t = f.knot;
    HighPrecision acc = 0;
    for (const Atom& atom : mu.atoms()) {
      const HighPrecision x = atom.x;
      if (x >= t) acc += HighPrecision(atom.w) * poly::power(HighPrecision(x - t), f.degree);
    }
    for (const DensityPiece& piece : mu.pieces()) {
      const HighPrecision lo = std::max(HighPrecision(piece.support().a()), t);
      const HighPrecision hi = piece.support().b();
      if (hi <= lo) continue;
      const std::vector<HighPrecision> q = poly::shift(widen(piece.coeffs()), t);
      acc += poly::integrate_times_power(q, f.degree, HighPrecision(lo - t), HighPrecision(hi - t));
    }
    return acc;
  }
  case TestFunction::Kind::Exponential: break;
  }
  throw std::invalid_argument("oracle_integral: only polynomials and truncated powers are supported");
}

} // namespace quadorder
