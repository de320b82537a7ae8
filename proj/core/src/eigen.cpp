#include "rmcalc/eigen.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "rmcalc/errors.hpp"

namespace rmcalc {

DMatrix DMatrix::identity(std::size_t n) {
  DMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

DMatrix multiply(const DMatrix& x, const DMatrix& y) {
  if (x.cols != y.rows) throw InvalidArgument("multiply: dimension mismatch");
  DMatrix out(x.rows, y.cols);
  for (std::size_t i = 0; i < x.rows; ++i) {
    double* o = &out.a[i * out.cols];
    for (std::size_t k = 0; k < x.cols; ++k) {
      const double v = x(i, k);
      if (v == 0) continue;
      const double* yr = &y.a[k * y.cols];
      for (std::size_t j = 0; j < y.cols; ++j) o[j] += v * yr[j];
    }
  }
  return out;
}

DMatrix transpose(const DMatrix& x) {
  DMatrix t(x.cols, x.rows);
  for (std::size_t i = 0; i < x.rows; ++i)
    for (std::size_t j = 0; j < x.cols; ++j) t(j, i) = x(i, j);
  return t;
}

DMatrix multiply_at_b(const DMatrix& x, const DMatrix& y) {
  if (x.rows != y.rows) throw InvalidArgument("multiply: dimension mismatch");
  DMatrix out(x.cols, y.cols);
  for (std::size_t k = 0; k < x.rows; ++k) {
    const double* xr = &x.a[k * x.cols];
    const double* yr = &y.a[k * y.cols];
    for (std::size_t i = 0; i < x.cols; ++i) {
      const double v = xr[i];
      if (v == 0) continue;
      double* o = &out.a[i * out.cols];
      for (std::size_t j = 0; j < y.cols; ++j) o[j] += v * yr[j];
    }
  }
  return out;
}

DMatrix multiply_a_bt(const DMatrix& x, const DMatrix& y) {
  if (x.cols != y.cols) throw InvalidArgument("multiply: dimension mismatch");
  DMatrix out(x.rows, y.rows);
  for (std::size_t i = 0; i < x.rows; ++i) {
    const double* xr = &x.a[i * x.cols];
    for (std::size_t j = 0; j < y.rows; ++j) {
      const double* yr = &y.a[j * y.cols];
      double s = 0;
      for (std::size_t k = 0; k < x.cols; ++k) s += xr[k] * yr[k];
      out(i, j) = s;
    }
  }
  return out;
}

namespace {

struct Tridiagonal {
  std::vector<double> d, e;  // e[i] couples i and i + 1
  std::vector<std::vector<double>> reflectors;
  std::vector<double> betas;
};

Tridiagonal tridiagonalize(DMatrix& a, bool keep) {
  const std::size_t n = a.rows;
  if (n != a.cols) throw InvalidArgument("eigen: matrix is not square");
  Tridiagonal t;
  t.d.assign(n, 0);
  t.e.assign(n, 0);
  std::vector<double> v, p;
  for (std::size_t k = 0; k + 2 < n; ++k) {
    const std::size_t m = n - k - 1;
    v.assign(m, 0);
    double norm2 = 0;
    for (std::size_t i = 0; i < m; ++i) {
      v[i] = a(k + 1 + i, k);
      norm2 += v[i] * v[i];
    }
    double beta = 0;
    if (norm2 > 0) {
      const double alpha = v[0] > 0 ? -std::sqrt(norm2) : std::sqrt(norm2);
      v[0] -= alpha;
      const double vn = norm2 - 2 * alpha * (v[0] + alpha) + alpha * alpha;
      if (vn > 0) {
        beta = 2 / vn;
        t.e[k] = alpha;
        p.assign(m, 0);
        for (std::size_t i = 0; i < m; ++i) {
          const double* row = &a.a[(k + 1 + i) * n + k + 1];
          double s = 0;
          for (std::size_t j = 0; j < m; ++j) s += row[j] * v[j];
          p[i] = beta * s;
        }
        double kv = 0;
        for (std::size_t i = 0; i < m; ++i) kv += v[i] * p[i];
        kv *= beta / 2;
        for (std::size_t i = 0; i < m; ++i) p[i] -= kv * v[i];
        for (std::size_t i = 0; i < m; ++i) {
          double* row = &a.a[(k + 1 + i) * n + k + 1];
          for (std::size_t j = 0; j < m; ++j) row[j] -= v[i] * p[j] + p[i] * v[j];
        }
      } else {
        t.e[k] = v[0] + alpha;
      }
    } else {
      t.e[k] = 0;
    }
    t.d[k] = a(k, k);
    if (keep) {
      t.reflectors.push_back(v);
      t.betas.push_back(beta);
    }
  }
  if (n >= 2) {
    t.d[n - 2] = a(n - 2, n - 2);
    t.e[n - 2] = a(n - 1, n - 2);
  }
  if (n >= 1) t.d[n - 1] = a(n - 1, n - 1);
  return t;
}

// Implicit QL with Wilkinson-style shifts; z collects rotations when given.
void ql_implicit(std::vector<double>& d, std::vector<double>& e, DMatrix* z) {
  const std::size_t n = d.size();
  for (std::size_t l = 0; l < n; ++l) {
    int iter = 0;
    std::size_t m;
    do {
      for (m = l; m + 1 < n; ++m) {
        const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m]) <= 1e-16 * dd) break;
      }
      if (m != l) {
        if (++iter > 60) throw ComputationError("eigen: QL iteration did not converge");
        double g = (d[l + 1] - d[l]) / (2 * e[l]);
        double r = std::hypot(g, 1.0);
        g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
        double s = 1, c = 1, p = 0;
        bool underflow = false;
        for (std::size_t i = m; i-- > l;) {
          const double f = s * e[i], b = c * e[i];
          r = std::hypot(f, g);
          e[i + 1] = r;
          if (r == 0) {
            d[i + 1] -= p;
            e[m] = 0;
            underflow = true;
            break;
          }
          s = f / r;
          c = g / r;
          g = d[i + 1] - p;
          r = (d[i] - g) * s + 2 * c * b;
          p = s * r;
          d[i + 1] = g + p;
          g = c * r - b;
          if (z) {
            for (std::size_t k = 0; k < n; ++k) {
              const double zf = (*z)(k, i + 1);
              (*z)(k, i + 1) = s * (*z)(k, i) + c * zf;
              (*z)(k, i) = c * (*z)(k, i) - s * zf;
            }
          }
        }
        if (underflow) continue;
        d[l] -= p;
        e[l] = g;
        e[m] = 0;
      }
    } while (m != l);
  }
}

}  // namespace

std::vector<double> eigenvalues_sym(DMatrix a) {
  Tridiagonal t = tridiagonalize(a, false);
  ql_implicit(t.d, t.e, nullptr);
  std::sort(t.d.begin(), t.d.end());
  return t.d;
}

std::vector<double> eigenvalues_tridiagonal(std::vector<double> d, std::vector<double> e) {
  if (d.empty()) return d;
  if (e.size() + 1 < d.size()) throw InvalidArgument("eigenvalues_tridiagonal: off-diagonal too short");
  e.resize(d.size(), 0.0);
  e.back() = 0;
  ql_implicit(d, e, nullptr);
  std::sort(d.begin(), d.end());
  return d;
}

SymEigen eigen_sym(DMatrix a) {
  const std::size_t n = a.rows;
  Tridiagonal t = tridiagonalize(a, true);
  // Q = H_0 H_1 ... applied to the identity from the right end.
  DMatrix q = DMatrix::identity(n);
  for (std::size_t k = t.reflectors.size(); k-- > 0;) {
    const auto& v = t.reflectors[k];
    const double beta = t.betas[k];
    if (beta == 0) continue;
    const std::size_t off = k + 1, m = v.size();
    for (std::size_t j = off; j < n; ++j) {
      double s = 0;
      for (std::size_t i = 0; i < m; ++i) s += v[i] * q(off + i, j);
      s *= beta;
      for (std::size_t i = 0; i < m; ++i) q(off + i, j) -= s * v[i];
    }
  }
  ql_implicit(t.d, t.e, &q);
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return t.d[x] < t.d[y]; });
  SymEigen out{std::vector<double>(n), DMatrix(n, n)};
  for (std::size_t k = 0; k < n; ++k) {
    out.values[k] = t.d[order[k]];
    for (std::size_t i = 0; i < n; ++i) out.vectors(i, k) = q(i, order[k]);
  }
  return out;
}

DMatrix cholesky(const DMatrix& a) {
  const std::size_t n = a.rows;
  DMatrix l(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    double s = a(j, j);
    for (std::size_t k = 0; k < j; ++k) s -= l(j, k) * l(j, k);
    if (!(s > 0)) throw ComputationError("cholesky: matrix is not positive definite");
    const double ljj = std::sqrt(s);
    l(j, j) = ljj;
    for (std::size_t i = j + 1; i < n; ++i) {
      double t = a(i, j);
      for (std::size_t k = 0; k < j; ++k) t -= l(i, k) * l(j, k);
      l(i, j) = t / ljj;
    }
  }
  return l;
}

DMatrix orthonormal_columns(const DMatrix& g) {
  const std::size_t m = g.rows, k = g.cols;
  if (m < k) throw InvalidArgument("orthonormal_columns: need rows >= cols");
  DMatrix r = g;
  std::vector<std::vector<double>> vs;
  std::vector<double> betas, diag(k);
  for (std::size_t j = 0; j < k; ++j) {
    std::vector<double> v(m - j);
    double norm2 = 0;
    for (std::size_t i = j; i < m; ++i) {
      v[i - j] = r(i, j);
      norm2 += v[i - j] * v[i - j];
    }
    const double alpha = v[0] > 0 ? -std::sqrt(norm2) : std::sqrt(norm2);
    v[0] -= alpha;
    double vn = 0;
    for (double x : v) vn += x * x;
    const double beta = vn > 0 ? 2 / vn : 0;
    for (std::size_t c = j; c < k; ++c) {
      double s = 0;
      for (std::size_t i = j; i < m; ++i) s += v[i - j] * r(i, c);
      s *= beta;
      for (std::size_t i = j; i < m; ++i) r(i, c) -= s * v[i - j];
    }
    diag[j] = r(j, j);
    vs.push_back(std::move(v));
    betas.push_back(beta);
  }
  DMatrix q(m, k);
  for (std::size_t j = 0; j < k; ++j) q(j, j) = 1;
  for (std::size_t j = k; j-- > 0;) {
    const auto& v = vs[j];
    for (std::size_t c = 0; c < k; ++c) {
      double s = 0;
      for (std::size_t i = j; i < m; ++i) s += v[i - j] * q(i, c);
      s *= betas[j];
      for (std::size_t i = j; i < m; ++i) q(i, c) -= s * v[i - j];
    }
  }
  for (std::size_t c = 0; c < k; ++c)
    if (diag[c] < 0)
      for (std::size_t i = 0; i < m; ++i) q(i, c) = -q(i, c);
  return q;
}

DMatrix haar_orthogonal(std::size_t n, Rng& rng) {
  DMatrix g(n, n);
  for (auto& x : g.a) x = rng.normal();
  return orthonormal_columns(g);
}

}  // namespace rmcalc
