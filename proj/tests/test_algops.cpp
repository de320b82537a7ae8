#include <doctest.h>

#include <random>

#include "rmcalc/algops.hpp"
#include "rmcalc/encodings.hpp"
#include "support.hpp"

using namespace rmcalc;
using rmcalc::test::q;

namespace {

BiPoly uv(const std::string& s) { return parse_bipoly(s, "u", "v"); }

// Roots of L1 and L2 at v0 combined pairwise must be exactly the roots of R at v0.
double oracle_gap(const BiPoly& L1, const BiPoly& L2, const BiPoly& R, const Rational& v0, bool product) {
  const auto a = test::slice_roots(L1, v0), b = test::slice_roots(L2, v0), r = test::slice_roots(R, v0);
  std::vector<cdouble> expect;
  for (auto x : a)
    for (auto y : b) expect.push_back(product ? x * y : x + y);
  return test::multiset_gap(expect, r);
}

bool usable_point(const std::vector<BiPoly>& ps, const Rational& v0) {
  for (const auto& p : ps)
    if (eval(leading_coeff_u(p), v0) == 0) return false;
  return true;
}

}  // namespace

TEST_CASE("companion matrices") {
  const auto c = companion_of(uv("u^2+v*u+1"));
  CHECK(c.denom == QPoly(Rational(1)));
  CHECK(c.numer(0, 0).is_zero());
  CHECK(c.numer(0, 1) == QPoly(Rational(-1)));
  CHECK(c.numer(1, 0) == QPoly(Rational(1)));
  CHECK(c.numer(1, 1) == QPoly(std::vector<Rational>{0, -1}));

  const auto d = companion_of(uv("u-v"));
  CHECK(d.numer(0, 0) == QPoly(std::vector<Rational>{0, 1}));
  CHECK(d.denom == QPoly(Rational(1)));

  // [[0, -1/(2v)], [1, (1+v)/(2v)]] as numerators over l_2 = 2v.
  const auto e = companion_of(uv("2*v*u^2+(1+v)*u+1"));
  CHECK(e.denom == QPoly(std::vector<Rational>{0, 2}));
  CHECK(e.numer(0, 1) == QPoly(Rational(-1)));
  CHECK(e.numer(1, 0) == e.denom);
  CHECK(e.numer(1, 1) == QPoly(std::vector<Rational>{-1, -1}));

  const BiPoly L = uv("3*v*u^3-u^2+(v^2-1)*u+2");
  CHECK(equivalent(companion_charpoly(companion_of(L), "u", "v"), L));
}

TEST_CASE("resultant conventions") {
  CHECK(resultant_u(uv("u^2-1"), uv("u-2")) == QPoly(Rational(3)));
  // Res(u - a, u - b) = b - a with a = v, b = 2.
  CHECK(resultant_u(uv("u-v"), uv("u-2")) == QPoly(std::vector<Rational>{2, -1}));
  const QPoly d = resultant_u(uv("u^2+v*u+1"), uv("2*u+v"));
  CHECK(normalize(d) == QPoly(std::vector<Rational>{-4, 0, 1}));
}

TEST_CASE("alg_add and alg_mul small cases") {
  CHECK(equivalent(alg_add(uv("u-v"), uv("u-v")), uv("u-2*v")));
  CHECK(equivalent(alg_mul(uv("u-v"), uv("u-2")), uv("u-2*v")));
  const BiPoly L = uv("u^2+v*u+1");
  CHECK(equivalent(alg_mul(uv("u-1"), L), L));
  CHECK(equivalent(alg_add(L, uv("u")), L));
  const BiPoly rg = parse_bipoly("r-g", "r", "g");
  CHECK(equivalent(alg_add(rg, rg), parse_bipoly("r-2*g", "r", "g")));
  CHECK(equivalent(to_mz(parse_bipoly("r-2*g", "r", "g"), Kind::rg), test::mz("2*m^2+z*m+1")));
  CHECK_THROWS_AS(alg_add(uv("u"), parse_bipoly("r", "r", "g")), InvalidArgument);
  CHECK_THROWS_AS(alg_add(uv("v"), uv("u")), InvalidArgument);
}

TEST_CASE("semicircle sums through the R transform") {
  const BiPoly s = from_mz(test::mz("m^2+z*m+1"), Kind::sy);
  const BiPoly mp = from_mz(test::mz("z*m^2+(2*z-1)*m+2"), Kind::sy);
  const BiPoly prod = alg_mul(s, mp);
  CHECK(equivalent(to_mz(prod, Kind::sy), test::mz("m^4*z^2-2*m^3*z+m^2+4*m*z+4")));
}

TEST_CASE("root multiset oracle on random pairs") {
  std::mt19937_64 g(20240611);
  std::uniform_int_distribution<int> deg(1, 3), dv(0, 2), num(-9, 9), den(1, 5);
  int pairs = 0;
  while (pairs < 20) {
    const BiPoly L1 = test::random_bipoly(g, deg(g), dv(g));
    const BiPoly L2 = test::random_bipoly(g, deg(g), dv(g));
    if (L1.dv() < 1 && L2.dv() < 1) continue;
    ++pairs;
    const BiPoly sum_r = alg_add(L1, L2, AlgPath::Resultant), sum_c = alg_add(L1, L2, AlgPath::Companion);
    const BiPoly prod_r = alg_mul(L1, L2, AlgPath::Resultant), prod_c = alg_mul(L1, L2, AlgPath::Companion);
    CHECK(equivalent(sum_r, sum_c));
    CHECK(equivalent(prod_r, prod_c));
    CHECK(equivalent(alg_add(L2, L1), sum_r));
    CHECK(equivalent(alg_mul(L2, L1), prod_r));
    CHECK(sum_r.du() <= L1.du() * L2.du());
    CHECK(prod_r.du() <= L1.du() * L2.du());
    int points = 0;
    while (points < 8) {
      Rational v0(num(g), den(g));
      v0.canonicalize();
      if (!usable_point({L1, L2, sum_r, prod_r}, v0)) continue;
      ++points;
      INFO("pair " << pairs << " L1=" << to_string(L1) << " L2=" << to_string(L2) << " v0=" << v0);
      CHECK(oracle_gap(L1, L2, sum_r, v0, false) <= 1e-9);
      CHECK(oracle_gap(L1, L2, prod_r, v0, true) <= 1e-9);
    }
  }
}
