#pragma once

#include <vector>

namespace quadorder {

struct TridiagonalEigen {
  std::vector<double> values;           // ascending
  std::vector<double> first_components; // first entry of each unit eigenvector
};

/// Eigen-decomposition of a symmetric tridiagonal matrix by implicit-shift QL.
/// `offdiag` has one entry fewer than `diag`. Only the first row of the eigenvector
/// matrix is accumulated, which is all Golub-Welsch needs.
TridiagonalEigen tridiagonal_eigen(std::vector<double> diag, std::vector<double> offdiag);

} // namespace quadorder
