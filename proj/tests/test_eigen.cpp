#include <doctest.h>

#include <cmath>
#include <numeric>

#include "rmcalc/eigen.hpp"
#include "rmcalc/errors.hpp"
#include "rmcalc/rng.hpp"

using namespace rmcalc;

namespace {

DMatrix random_symmetric(std::size_t n, Rng& rng) {
  DMatrix a(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j <= i; ++j) a(i, j) = a(j, i) = rng.normal();
  return a;
}

double frobenius(const DMatrix& a) {
  double s = 0;
  for (double x : a.a) s += x * x;
  return std::sqrt(s);
}

}  // namespace

TEST_CASE("small spectra") {
  DMatrix d(3, 3);
  d(0, 0) = 3;
  d(1, 1) = 1;
  d(2, 2) = 2;
  const auto v = eigenvalues_sym(d);
  CHECK(v == std::vector<double>{1, 2, 3});
  DMatrix s(2, 2);
  s(0, 1) = s(1, 0) = 1;
  const auto w = eigenvalues_sym(s);
  CHECK(w[0] == doctest::Approx(-1).epsilon(1e-14));
  CHECK(w[1] == doctest::Approx(1).epsilon(1e-14));
  DMatrix b(3, 3);
  b(0, 0) = b(1, 1) = 2;
  b(0, 1) = b(1, 0) = 1;
  b(2, 2) = 5;
  const auto u = eigenvalues_sym(b);
  CHECK(u[0] == doctest::Approx(1));
  CHECK(u[1] == doctest::Approx(3));
  CHECK(u[2] == doctest::Approx(5));
}

TEST_CASE("trace and residuals on a random symmetric matrix") {
  Rng rng(5, 0);
  const DMatrix a = random_symmetric(50, rng);
  const SymEigen e = eigen_sym(a);
  double trace = 0;
  for (std::size_t i = 0; i < 50; ++i) trace += a(i, i);
  CHECK(std::abs(std::accumulate(e.values.begin(), e.values.end(), 0.0) - trace) <= 1e-8);
  CHECK(std::is_sorted(e.values.begin(), e.values.end()));
  const double norm = frobenius(a);
  for (std::size_t k = 0; k < 50; ++k) {
    double r = 0;
    for (std::size_t i = 0; i < 50; ++i) {
      double s = -e.values[k] * e.vectors(i, k);
      for (std::size_t j = 0; j < 50; ++j) s += a(i, j) * e.vectors(j, k);
      r += s * s;
    }
    CHECK(std::sqrt(r) <= 1e-8 * norm);
  }
  const DMatrix vtv = multiply_at_b(e.vectors, e.vectors);
  for (std::size_t i = 0; i < 50; ++i)
    for (std::size_t j = 0; j < 50; ++j) CHECK(std::abs(vtv(i, j) - (i == j ? 1.0 : 0.0)) <= 1e-10);
  CHECK(eigenvalues_sym(a) == e.values);
}

TEST_CASE("tridiagonal solver matches the dense solver") {
  Rng rng(9, 1);
  const std::size_t n = 40;
  std::vector<double> d(n), e(n - 1);
  DMatrix t(n, n);
  for (std::size_t i = 0; i < n; ++i) t(i, i) = d[i] = rng.normal();
  for (std::size_t i = 0; i + 1 < n; ++i) t(i, i + 1) = t(i + 1, i) = e[i] = rng.normal();
  const auto a = eigenvalues_tridiagonal(d, e), b = eigenvalues_sym(t);
  for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(a[i] - b[i]) <= 1e-10);
}

TEST_CASE("matrix products") {
  DMatrix x(2, 3), y(3, 2);
  for (std::size_t i = 0; i < 6; ++i) x.a[i] = y.a[i] = static_cast<double>(i + 1);
  const DMatrix p = multiply(x, y);
  CHECK(p(0, 0) == 22);
  CHECK(p(1, 1) == 64);
  const DMatrix q = multiply_at_b(transpose(x), y);
  CHECK(q.a == p.a);
  const DMatrix r = multiply_a_bt(x, transpose(y));
  CHECK(r.a == p.a);
}

TEST_CASE("cholesky and orthonormal columns") {
  Rng rng(3, 0);
  DMatrix g(30, 10);
  for (double& v : g.a) v = rng.normal();
  const DMatrix gram = multiply_at_b(g, g);
  const DMatrix l = cholesky(gram);
  const DMatrix back = multiply_a_bt(l, l);
  for (std::size_t i = 0; i < gram.a.size(); ++i) CHECK(std::abs(back.a[i] - gram.a[i]) <= 1e-10 * (1 + std::abs(gram.a[i])));
  DMatrix bad(2, 2);
  bad(0, 0) = 1;
  bad(1, 1) = -1;
  CHECK_THROWS_AS(cholesky(bad), ComputationError);

  const DMatrix qm = orthonormal_columns(g);
  const DMatrix qtq = multiply_at_b(qm, qm);
  for (std::size_t i = 0; i < 10; ++i)
    for (std::size_t j = 0; j < 10; ++j) CHECK(std::abs(qtq(i, j) - (i == j ? 1.0 : 0.0)) <= 1e-12);
  // R = Q'G is upper triangular with a positive diagonal.
  const DMatrix rr = multiply_at_b(qm, g);
  for (std::size_t i = 0; i < 10; ++i) {
    CHECK(rr(i, i) > 0);
    for (std::size_t j = 0; j < i; ++j) CHECK(std::abs(rr(i, j)) <= 1e-10);
  }
}

TEST_CASE("Haar orthogonal matrices") {
  Rng rng(4, 2);
  const DMatrix q = haar_orthogonal(25, rng);
  const DMatrix qtq = multiply_at_b(q, q);
  for (std::size_t i = 0; i < 25; ++i)
    for (std::size_t j = 0; j < 25; ++j) CHECK(std::abs(qtq(i, j) - (i == j ? 1.0 : 0.0)) <= 1e-12);
}

TEST_CASE("rng streams") {
  Rng a(1, 7), b(1, 7), c(1, 8);
  for (int i = 0; i < 100; ++i) CHECK(a.next() == b.next());
  Rng d(1, 7);
  int same = 0;
  for (int i = 0; i < 100; ++i) same += d.next() == c.next();
  CHECK(same == 0);
  Rng r(2, 0);
  double s = 0, s2 = 0, g = 0, chi = 0;
  int outside = 0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const double x = r.normal();
    s += x;
    s2 += x * x;
    g += r.gamma(0.5);
    chi += r.chi_square(7);
    const double u = r.uniform();
    outside += !(u > 0 && u < 1);
  }
  CHECK(outside == 0);
  CHECK(std::abs(s / n) < 0.01);
  CHECK(std::abs(s2 / n - 1) < 0.02);
  CHECK(std::abs(g / n - 0.5) < 0.01);
  CHECK(std::abs(chi / n - 7) < 0.05);
}
