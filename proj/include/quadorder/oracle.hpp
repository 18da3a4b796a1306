#pragma once

#include <vector>

#include <boost/multiprecision/cpp_dec_float.hpp>

#include "quadorder/convexity.hpp"
#include "quadorder/measure.hpp"

namespace quadorder {

/// 50 significant decimal digits.
using HighPrecision = boost::multiprecision::cpp_dec_float_50;

/// int p dmu for a polynomial p (ascending coefficients), evaluated in closed form
/// in HighPrecision. Atom positions, weights and density coefficients are taken as
/// the exact binary values they hold.
HighPrecision oracle_integral(const Measure& mu, const std::vector<double>& polynomial);

/// Same for monomial and truncated-power test functions. Throws std::invalid_argument
/// for exponentials.
HighPrecision oracle_integral(const Measure& mu, const TestFunction& f);

} // namespace quadorder
