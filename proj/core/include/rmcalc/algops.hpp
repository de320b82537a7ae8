#pragma once

#include <cstddef>
#include <vector>

#include "rmcalc/bipoly.hpp"
#include "rmcalc/errors.hpp"
#include "rmcalc/poly.hpp"

namespace rmcalc {

template <class R>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  R& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const R& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  void swap_rows(std::size_t a, std::size_t b) {
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
  }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<R> data_;
};

using PolyMatrix = Matrix<QPoly>;

// Fraction-free Gaussian elimination; every division is exact in R.
template <class R>
R det_bareiss(Matrix<R> m) {
  const std::size_t n = m.rows();
  if (n != m.cols()) throw InvalidArgument("determinant of a non-square matrix");
  if (n == 0) return ring::one<R>();
  bool negate = false;
  R prev = ring::one<R>();
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (ring::is_zero(m(k, k))) {
      std::size_t p = k + 1;
      while (p < n && ring::is_zero(m(p, k))) ++p;
      if (p == n) return R{};
      m.swap_rows(k, p);
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        R t = m(i, j) * m(k, k) - m(i, k) * m(k, j);
        m(i, j) = ring::divexact(t, prev);
      }
      m(i, k) = R{};
    }
    prev = m(k, k);
  }
  R d = m(n - 1, n - 1);
  if (negate) d = R(-d);
  return d;
}

// Laplace expansion along the first row. Exponential cost; small sizes only.
template <class R>
R det_cofactor(const Matrix<R>& m) {
  const std::size_t n = m.rows();
  if (n != m.cols()) throw InvalidArgument("determinant of a non-square matrix");
  if (n == 0) return ring::one<R>();
  if (n == 1) return m(0, 0);
  R total{};
  for (std::size_t c = 0; c < n; ++c) {
    if (ring::is_zero(m(0, c))) continue;
    Matrix<R> minor(n - 1, n - 1);
    for (std::size_t i = 1; i < n; ++i) {
      std::size_t cc = 0;
      for (std::size_t j = 0; j < n; ++j) {
        if (j == c) continue;
        minor(i - 1, cc++) = m(i, j);
      }
    }
    R term = m(0, c) * det_cofactor(minor);
    if (c % 2 == 0)
      total += term;
    else
      total -= term;
  }
  return total;
}

template <class R>
R determinant(const Matrix<R>& m) {
  return m.rows() <= 3 ? det_cofactor(m) : det_bareiss(m);
}

// Standard row layout: m shifted copies of a, then n shifted copies of b,
// coefficients in descending order.
template <class R>
Matrix<R> sylvester_matrix(const Poly<R>& a, const Poly<R>& b) {
  const int n = a.degree(), m = b.degree();
  if (n < 0 || m < 0) throw InvalidArgument("sylvester matrix of a zero polynomial");
  const std::size_t size = static_cast<std::size_t>(n + m);
  Matrix<R> s(size, size);
  for (int r = 0; r < m; ++r)
    for (int i = 0; i <= n; ++i) s(static_cast<std::size_t>(r), static_cast<std::size_t>(r + n - i)) = a[i];
  for (int r = 0; r < n; ++r)
    for (int i = 0; i <= m; ++i) s(static_cast<std::size_t>(m + r), static_cast<std::size_t>(r + m - i)) = b[i];
  return s;
}

// Res(a, b) = a_n^m b_m^n prod_{i,j} (beta_j - alpha_i).
template <class R>
R resultant(const Poly<R>& a, const Poly<R>& b) {
  if (a.is_zero() || b.is_zero()) throw InvalidArgument("resultant of a zero polynomial");
  const int n = a.degree(), m = b.degree();
  if (n == 0) return ipow(a[0], static_cast<unsigned>(m));
  if (m == 0) return ipow(b[0], static_cast<unsigned>(n));
  R d = det_bareiss(sylvester_matrix(a, b));
  if ((n * m) % 2 == 1) d = R(-d);
  return d;
}

// Resultant in u of two polynomials with coefficients in Q[v].
QPoly resultant_u(const BiPoly& a, const BiPoly& b);

// Companion matrix entries are numer(i, j) / denom with denom = l_Du(v).
struct CompanionMatrix {
  PolyMatrix numer;
  QPoly denom;
};

CompanionMatrix companion_of(const BiPoly& L);

// det(u I - C) scaled by denom^Du; equals L up to a factor in v.
BiPoly companion_charpoly(const CompanionMatrix& C, const std::string& u_label, const std::string& v_label);

enum class AlgPath { Auto, Companion, Resultant };

// Polynomial whose u-roots are all sums u1(v) + u2(v) (resp. products).
BiPoly alg_add(const BiPoly& L1, const BiPoly& L2, AlgPath path = AlgPath::Auto);
BiPoly alg_mul(const BiPoly& L1, const BiPoly& L2, AlgPath path = AlgPath::Auto);

}  // namespace rmcalc
