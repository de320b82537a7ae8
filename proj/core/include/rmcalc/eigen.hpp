#pragma once

#include <cstddef>
#include <vector>

#include "rmcalc/rng.hpp"

namespace rmcalc {

// Dense row-major matrix of doubles.
struct DMatrix {
  std::size_t rows = 0, cols = 0;
  std::vector<double> a;

  DMatrix() = default;
  DMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c, 0.0) {}
  double& operator()(std::size_t i, std::size_t j) { return a[i * cols + j]; }
  double operator()(std::size_t i, std::size_t j) const { return a[i * cols + j]; }
  static DMatrix identity(std::size_t n);
};

DMatrix multiply(const DMatrix& x, const DMatrix& y);
DMatrix multiply_at_b(const DMatrix& x, const DMatrix& y);  // x' y
DMatrix multiply_a_bt(const DMatrix& x, const DMatrix& y);  // x y'
DMatrix transpose(const DMatrix& x);

struct SymEigen {
  std::vector<double> values;  // ascending
  DMatrix vectors;             // column k pairs with values[k]
};

// Householder tridiagonalization followed by implicit-shift QL.
std::vector<double> eigenvalues_sym(DMatrix a);
SymEigen eigen_sym(DMatrix a);
// d diagonal, e off-diagonal (e[i] couples i and i + 1).
std::vector<double> eigenvalues_tridiagonal(std::vector<double> d, std::vector<double> e);

// Lower-triangular factor L with a = L L'. Throws on a non-positive pivot.
DMatrix cholesky(const DMatrix& a);

// Orthonormal columns from Householder QR of g (rows >= cols), with column
// signs fixed so that R has a positive diagonal.
DMatrix orthonormal_columns(const DMatrix& g);
DMatrix haar_orthogonal(std::size_t n, Rng& rng);

}  // namespace rmcalc
