#include "rmcalc/algops.hpp"

namespace rmcalc {

namespace {

using QPoly3 = Poly<QPoly2>;

Rational binomial(int n, int k) {
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return Rational(r);
}

void require_compatible(const BiPoly& a, const BiPoly& b, const char* op) {
  if (!a.same_labels(b)) throw InvalidArgument(std::string(op) + ": operands use different variable labels");
  if (a.du() < 1 || b.du() < 1) throw InvalidArgument(std::string(op) + ": operands need degree >= 1 in the eliminated variable");
}

// L2(u, v) lifted to coefficients in Q[t][v] that do not involve t.
QPoly3 lift_constant_in_t(const BiPoly& L) {
  std::vector<QPoly2> c;
  for (int j = 0; j <= L.du(); ++j) c.emplace_back(L.poly().coeff(j));
  return QPoly3(std::move(c));
}

BiPoly finish(const BiPoly& like, QPoly2 p, const char* op) {
  if (p.is_zero()) throw ComputationError(std::string(op) + ": degenerate zero result");
  return canonicalize(BiPoly(like.u_label(), like.v_label(), std::move(p)));
}

Matrix<QPoly2> kronecker_system(const CompanionMatrix& c1, const CompanionMatrix& c2, bool product) {
  const std::size_t n1 = c1.numer.rows(), n2 = c2.numer.rows(), n = n1 * n2;
  const QPoly d12 = c1.denom * c2.denom;
  Matrix<QPoly2> m(n, n);
  for (std::size_t i1 = 0; i1 < n1; ++i1)
    for (std::size_t i2 = 0; i2 < n2; ++i2)
      for (std::size_t j1 = 0; j1 < n1; ++j1)
        for (std::size_t j2 = 0; j2 < n2; ++j2) {
          QPoly entry;
          if (product) {
            entry = c1.numer(i1, j1) * c2.numer(i2, j2);
          } else {
            if (i2 == j2) entry += c1.numer(i1, j1) * c2.denom;
            if (i1 == j1) entry += c2.numer(i2, j2) * c1.denom;
          }
          const std::size_t r = i1 * n2 + i2, c = j1 * n2 + j2;
          QPoly2 e(-entry);
          if (r == c) e += QPoly2::monomial(d12, 1);
          m(r, c) = std::move(e);
        }
  return m;
}

}  // namespace

QPoly resultant_u(const BiPoly& a, const BiPoly& b) {
  if (!a.same_labels(b)) throw InvalidArgument("resultant: operands use different variable labels");
  return resultant(a.poly(), b.poly());
}

CompanionMatrix companion_of(const BiPoly& L) {
  const int d = L.du();
  if (d < 1) throw InvalidArgument("companion_of: degree in " + L.u_label() + " must be >= 1");
  CompanionMatrix c{PolyMatrix(static_cast<std::size_t>(d), static_cast<std::size_t>(d)), L.poly().lead()};
  for (int i = 0; i + 1 < d; ++i) c.numer(static_cast<std::size_t>(i + 1), static_cast<std::size_t>(i)) = c.denom;
  for (int j = 0; j < d; ++j) c.numer(static_cast<std::size_t>(j), static_cast<std::size_t>(d - 1)) = -L.poly().coeff(j);
  return c;
}

BiPoly companion_charpoly(const CompanionMatrix& C, const std::string& u_label, const std::string& v_label) {
  const std::size_t n = C.numer.rows();
  Matrix<QPoly2> m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      QPoly2 e(-C.numer(i, j));
      if (i == j) e += QPoly2::monomial(C.denom, 1);
      m(i, j) = std::move(e);
    }
  return BiPoly(u_label, v_label, determinant(m));
}

BiPoly alg_add(const BiPoly& L1, const BiPoly& L2, AlgPath path) {
  require_compatible(L1, L2, "alg_add");
  if (path == AlgPath::Auto) path = L1 == L2 ? AlgPath::Companion : AlgPath::Resultant;
  if (path == AlgPath::Companion) {
    return finish(L1, determinant(kronecker_system(companion_of(L1), companion_of(L2), false)), "alg_add");
  }
  // L1(t - u, v) as a polynomial in u over Q[t][v].
  const int d1 = L1.du();
  std::vector<QPoly2> a(static_cast<std::size_t>(d1) + 1);
  for (int j = 0; j <= d1; ++j) {
    const QPoly& lj = L1.poly().coeff(j);
    if (lj.is_zero()) continue;
    for (int i = 0; i <= j; ++i) {
      Rational c = binomial(j, i);
      if (i % 2 == 1) c = -c;
      a[static_cast<std::size_t>(i)] += QPoly2::monomial(lj * c, j - i);
    }
  }
  return finish(L1, resultant(QPoly3(std::move(a)), lift_constant_in_t(L2)), "alg_add");
}

BiPoly alg_mul(const BiPoly& L1, const BiPoly& L2, AlgPath path) {
  require_compatible(L1, L2, "alg_mul");
  if (path == AlgPath::Auto) path = L1 == L2 ? AlgPath::Companion : AlgPath::Resultant;
  if (path == AlgPath::Companion) {
    return finish(L1, determinant(kronecker_system(companion_of(L1), companion_of(L2), true)), "alg_mul");
  }
  // u^Du1 L1(t/u, v): the coefficient of u^(Du1 - j) is l_j(v) t^j.
  const int d1 = L1.du();
  std::vector<QPoly2> a(static_cast<std::size_t>(d1) + 1);
  for (int j = 0; j <= d1; ++j) a[static_cast<std::size_t>(d1 - j)] = QPoly2::monomial(L1.poly().coeff(j), j);
  return finish(L1, resultant(QPoly3(std::move(a)), lift_constant_in_t(L2)), "alg_mul");
}

}  // namespace rmcalc
