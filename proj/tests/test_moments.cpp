#include <doctest.h>

#include "rmcalc/moments.hpp"
#include "rmcalc/oplaws.hpp"
#include "support.hpp"

using namespace rmcalc;
using rmcalc::test::mz;
using rmcalc::test::q;

namespace {

BiPoly half_half() { return mz("m*(2*z^2-2*z)-(1-2*z)"); }

BiPoly jacobi(const Rational& c1, const Rational& c2) {
  return inverse_law(shift_law(multiply_wishart(inverse_law(multiply_wishart(identity_law(), c1)), c2), 1));
}

Recurrence make_recurrence(std::vector<std::vector<Rational>> coeffs) {
  Recurrence r;
  r.order = static_cast<int>(coeffs.size()) - 1;
  for (auto& c : coeffs) {
    r.coeffs.emplace_back(std::move(c));
    r.degree = std::max(r.degree, r.coeffs.back().degree());
  }
  return r;
}

std::vector<Rational> catalan(int n) {
  std::vector<Rational> c{1};
  for (int k = 0; k + 1 < n; ++k) c.push_back(c.back() * (4 * k + 2) / (k + 2));
  return c;
}

}  // namespace

TEST_CASE("Marchenko-Pastur moments") {
  CHECK(moment_series(wishart(2), 4).coeffs == std::vector<Rational>{1, 1, 3, 11, 45});
  CHECK(moment_series(multiply_wishart(identity_law(), 2), 4).coeffs == std::vector<Rational>{1, 1, 3, 11, 45});
  // 1 + z + (c+1) z^2 + (3c+c^2+1) z^3 + (6c^2+c^3+6c+1) z^4.
  for (const Rational c : {q(1, 2), q(1, 3), q(5)}) {
    const std::vector<Rational> expect{1, 1, c + 1, 3 * c + c * c + 1, 6 * c * c + c * c * c + 6 * c + 1};
    CHECK(moment_series(wishart(c), 4).coeffs == expect);
    CHECK(moment_series(from_mz(wishart(c), Kind::muz), 4, Kind::muz).coeffs == expect);
  }
}

TEST_CASE("Marchenko-Pastur recurrence") {
  const auto m = moment_series(wishart(2), 40).coeffs;
  const auto r = fit_recurrence(m, 3, 2);
  REQUIRE(r.has_value());
  CHECK(r->order == 2);
  CHECK(r->degree == 1);
  CHECK(to_string(*r) == "(n)*a(n) + (-6*n - 9)*a(n+1) + (n + 3)*a(n+2) = 0");
  for (const Rational c : {q(1, 2), q(3)}) {
    // (c-1)^2 n a(n) + ((-2-2c) n - 3c - 3) a(n+1) + (n+3) a(n+2) = 0.
    const auto rec = make_recurrence({{0, (c - 1) * (c - 1)}, {-3 * c - 3, -2 - 2 * c}, {3, 1}});
    CHECK(recurrence_holds(rec, moment_series(wishart(c), 30).coeffs));
  }
}

TEST_CASE("semicircle moments are Catalan numbers") {
  const auto m = moment_series(wigner(), 32).coeffs;
  const auto cat = catalan(17);
  for (int n = 0; n <= 32; ++n) CHECK(m[n] == (n % 2 ? Rational(0) : cat[n / 2]));
  std::vector<Rational> even;
  for (int n = 0; n <= 32; n += 2) even.push_back(m[n]);
  const auto r = fit_recurrence(even, 2, 2);
  REQUIRE(r.has_value());
  CHECK(r->order == 1);
  // (n+2) C(n+1) = (4n+2) C(n).
  CHECK(recurrence_holds(make_recurrence({{-2, -4}, {2, 1}}), even));
}

TEST_CASE("compression moments") {
  for (const Rational c : {q(2, 5), q(3, 4)}) {
    const auto m = moment_series(compress(half_half(), c), 3).coeffs;
    CHECK(m == std::vector<Rational>{1, q(1, 2), (1 + c) / 4, (1 + 3 * c) / 8});
  }
}

TEST_CASE("Jacobi moments at c1 = c2 = c") {
  const Rational c = q(1, 2);
  const auto m = moment_series(jacobi(c, c), 40).coeffs;
  // Printed series, coefficient of z^k is M_{k+1}.
  const std::vector<Rational> printed{q(1, 2), c / 8 + q(1, 4), 3 * c / 16 + q(1, 8),
                                      c * c / 32 + 3 * c / 16 - c * c * c / 128 + q(1, 16),
                                      -5 * c * c * c / 256 + 5 * c * c / 64 + 5 * c / 32 + q(1, 32)};
  CHECK(m[0] == 1);
  for (std::size_t k = 0; k < printed.size(); ++k) CHECK(m[k + 1] == printed[k]);
  const std::vector<Rational> shifted(m.begin() + 1, m.end());
  const Rational d = c * c - 2 * c + 1;
  const auto rec = make_recurrence(
      {{d, d}, {-11 + 2 * c - c * c, -5 + 2 * c - c * c}, {26, 8}, {-16, -4}});
  CHECK(recurrence_holds(rec, shifted));
}

TEST_CASE("Jacobi moments with irrational mean are rejected") {
  // mu = 1 + t z with 21 t^2 + 59 t - 40 = 0, so M_1 = (sqrt(6841) - 59) / 42.
  const auto L = jacobi(q(1, 10), q(5, 8));
  CHECK_THROWS_WITH_AS(moment_series(L, 4), doctest::Contains("irrational"), ComputationError);
}

TEST_CASE("Jacobi cumulants at c1 = c2 = c") {
  for (const Rational c : {q(1, 2), q(1, 3)}) {
    const auto k = cumulant_series(jacobi(c, c), 20).coeffs;
    CHECK(k[0] == q(1, 2));
    CHECK(k[1] == c / 8);
    const auto rec = make_recurrence({{0, c * c}, {}, {12, 4}});
    CHECK(recurrence_holds(rec, k));
    const auto fit = fit_recurrence(k, 2, 1);
    REQUIRE(fit.has_value());
    CHECK(recurrence_holds(*fit, k));
  }
}

TEST_CASE("cumulants") {
  for (const Rational c : {q(1, 2), q(2)}) {
    const auto k = cumulant_series(wishart(c), 5).coeffs;
    for (int n = 0; n <= 5; ++n) CHECK(k[n] == pow(c, static_cast<unsigned>(n)));
  }
  const auto s = cumulant_series(wigner(), 5).coeffs;
  CHECK(s == std::vector<Rational>{0, 1, 0, 0, 0, 0});
  const auto a = cumulant_series(atomic({{{q(1), q(3)}}}), 4).coeffs;
  CHECK(a == std::vector<Rational>{3, 0, 0, 0, 0});
  for (const BiPoly& L : {wishart(q(1, 2)), half_half(), free_add(wigner(), wishart(q(1, 2)))}) {
    const auto M = moment_series(L, 2).coeffs;
    const auto K = cumulant_series(L, 1).coeffs;
    CHECK(K[0] == M[1]);
    CHECK(K[1] == M[2] - M[1] * M[1]);
  }
}

TEST_CASE("no moments for the Cauchy law") {
  CHECK_THROWS_AS(moment_series(mz("(z^2+1)*m^2+2*z*m+1"), 4), ComputationError);
}

TEST_CASE("moments from density") {
  auto m = moments_from_density(density_grid(wigner(), 1000), 4);
  const std::vector<double> semi{1, 0, 1, 0, 2};
  for (int i = 0; i <= 4; ++i) CHECK(std::abs(m[i] - semi[i]) <= 1e-3);
  m = moments_from_density(density_grid(wishart(2), 1000), 3);
  const std::vector<double> mp{1, 1, 3, 11};
  for (int i = 0; i <= 3; ++i) CHECK(std::abs(m[i] - mp[i]) <= 1e-2);
  m = moments_from_density(density_grid(half_half(), 1000), 3);
  for (int i = 1; i <= 3; ++i) CHECK(std::abs(m[i] - 0.5) <= 1e-3);
}

TEST_CASE("exact and numeric moments agree on the corpus") {
  for (const BiPoly& L : {wigner(), wishart(2), wishart(q(1, 2)), half_half(), free_add(wigner(), wishart(q(1, 2))),
                          compress(half_half(), q(2, 5))}) {
    INFO(to_string(L));
    const auto exact = moment_series(L, 4).coeffs;
    const auto num = moments_from_density(density_grid(L, 1000), 4);
    for (int i = 0; i <= 4; ++i) CHECK(std::abs(num[i] - to_double(exact[i])) <= 1e-2 * (1 + std::abs(to_double(exact[i]))));
    CHECK(hankel_psd(moment_series(L, 6).coeffs, 4));
  }
}

TEST_CASE("recurrence fitting rejects non-holonomic noise") {
  std::vector<Rational> junk;
  for (int i = 0; i < 30; ++i) junk.push_back(Rational((i * i * 7919 + 13) % 101) / (1 + i % 5));
  CHECK_FALSE(fit_recurrence(junk, 2, 1).has_value());
}
