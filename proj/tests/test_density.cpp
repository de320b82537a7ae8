#include <doctest.h>

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "rmcalc/density.hpp"
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

}  // namespace

TEST_CASE("roots_at") {
  auto r = roots_at(wigner(), 0.0).roots;
  REQUIRE(r.size() == 2);
  CHECK(test::multiset_gap(r, {cdouble(0, 1), cdouble(0, -1)}) < 1e-12);
  r = roots_at(wigner(), 3.0).roots;
  const double s5 = std::sqrt(5.0);
  CHECK(test::multiset_gap(r, {cdouble((-3 + s5) / 2), cdouble((-3 - s5) / 2)}) < 1e-12);
  CHECK(roots_at(wishart(2), 0.0).degree_drop);
}

TEST_CASE("roots at real points come in conjugate pairs") {
  const BiPoly L = free_add(wigner(), wishart(q(1, 2)));
  for (double x : {-1.3, 0.2, 1.7, 4.0}) {
    const auto r = roots_at(L, x).roots;
    std::vector<cdouble> conj;
    for (auto v : r) conj.push_back(std::conj(v));
    CHECK(test::multiset_gap(r, conj) < 1e-10);
  }
}

TEST_CASE("poles and endpoints") {
  CHECK(find_poles(wishart(2)) == std::vector<double>{0.0});
  const auto p = find_poles(half_half());
  REQUIRE(p.size() == 2);
  CHECK(p[0] == doctest::Approx(0.0));
  CHECK(p[1] == doctest::Approx(1.0));
  CHECK(find_poles(wigner()).empty());

  auto e = support_endpoints(wigner()).endpoints;
  REQUIRE(e.size() == 2);
  CHECK(e[0] == doctest::Approx(-2.0).epsilon(1e-12));
  CHECK(e[1] == doctest::Approx(2.0).epsilon(1e-12));
  e = support_endpoints(wishart(2)).endpoints;
  REQUIRE(e.size() == 2);
  CHECK(std::abs(e[0] - std::pow(1 - std::sqrt(2.0), 2)) <= 1e-9);
  CHECK(std::abs(e[1] - std::pow(1 + std::sqrt(2.0), 2)) <= 1e-9);
  e = support_endpoints(multiply_wishart(identity_law(), q(1, 10))).endpoints;
  REQUIRE(e.size() == 2);
  CHECK(std::abs(e[0] - std::pow(1 - std::sqrt(0.1), 2)) <= 1e-9);
  CHECK(std::abs(e[1] - std::pow(1 + std::sqrt(0.1), 2)) <= 1e-9);
}

TEST_CASE("atom weights") {
  auto a = atom_weights(wishart(2));
  REQUIRE(a.size() == 1);
  CHECK(a[0].location == doctest::Approx(0.0));
  CHECK(std::abs(a[0].weight - 0.5) <= 1e-3);
  a = atom_weights(half_half());
  REQUIRE(a.size() == 2);
  CHECK(std::abs(a[0].weight - 0.5) <= 1e-6);
  CHECK(std::abs(a[1].weight - 0.5) <= 1e-6);
  CHECK(atom_weights(compress(half_half(), q(2, 5))).empty());
  // Above c = 1/2 both atoms survive with weight (2c - 1) / 2c.
  a = atom_weights(compress(half_half(), q(3, 4)));
  REQUIRE(a.size() == 2);
  CHECK(std::abs(a[0].weight - 1.0 / 3) <= 1e-4);
  CHECK(std::abs(a[1].weight - 1.0 / 3) <= 1e-4);
}

TEST_CASE("semicircle profile") {
  const auto p = density_grid(wigner(), -2.5, 2.5, 2001);
  CHECK(std::abs(p.density[1000] - 1 / std::numbers::pi) <= 1e-6);
  CHECK(normalization_check(p) <= 1e-3);
  for (std::size_t i = 0; i < p.grid.size(); ++i) {
    CHECK(std::abs(p.density[i] - test::semicircle_density(p.grid[i])) <= 1e-8);
    CHECK(p.branches[i][p.selected[i]].imag() >= -1e-9);
  }
  const auto cut = density_grid(wigner(), 0, 1, 500);
  CHECK(normalization_check(cut) > 0.2);
}

TEST_CASE("Marchenko-Pastur profile") {
  const auto p = density_grid(wishart(2), 1000);
  CHECK(normalization_check(p) <= 1e-3);
  REQUIRE(p.atoms.size() == 1);
  CHECK(std::abs(p.atoms[0].weight - 0.5) <= 1e-3);
  CHECK(std::abs(test::density_at(wishart(2), 2.0) - 0.10527) <= 1e-4);
  for (std::size_t i = 0; i < p.grid.size(); ++i)
    if (std::abs(p.grid[i]) > 1e-6) CHECK(std::abs(p.density[i] - test::mp_density(2, p.grid[i])) <= 1e-8);
  const auto h = density_grid(wishart(q(1, 2)), 1000);
  for (std::size_t i = 0; i < h.grid.size(); ++i)
    CHECK(std::abs(h.density[i] - test::mp_density(0.5, h.grid[i])) <= 1e-8);
}

TEST_CASE("Cauchy density") {
  CHECK(std::abs(test::density_at(mz("(z^2+1)*m^2+2*z*m+1"), 0.0) - 1 / std::numbers::pi) <= 1e-8);
  CHECK(std::abs(test::density_at(mz("(z^2+1)*m^2+2*z*m+1"), 2.0) - 1 / (5 * std::numbers::pi)) <= 1e-8);
}

TEST_CASE("compression profile") {
  const double c = 0.4;
  const BiPoly L = compress(half_half(), q(2, 5));
  const auto e = support_endpoints(L).endpoints;
  const double lo = 0.5 - std::sqrt(c - c * c), hi = 0.5 + std::sqrt(c - c * c);
  bool found_lo = false, found_hi = false;
  for (double x : e) {
    found_lo = found_lo || std::abs(x - lo) <= 1e-6;
    found_hi = found_hi || std::abs(x - hi) <= 1e-6;
  }
  CHECK(found_lo);
  CHECK(found_hi);
  const auto p = density_grid(L, 1000);
  CHECK(p.atoms.empty());
  CHECK(normalization_check(p) <= 1e-3);
  for (double x : {0.1, 0.3, 0.5, 0.8}) {
    const double f = std::sqrt((x - lo) * (hi - x)) / (std::numbers::pi * (2 * x * c - 2 * c * x * x));
    CHECK(std::abs(test::density_at(L, x) - f) <= 1e-8);
  }
}

TEST_CASE("Jacobi profile against the closed form") {
  const double c1 = 0.1, c2 = 0.625;
  const BiPoly L = jacobi(q(1, 10), q(5, 8));
  const double s = std::sqrt(c1 + c2 - c1 * c2), base = c1 * c1 - c1 + 2 + c2 - c1 * c2;
  const double lo = (1 - c1) * (1 - c1) / (base + 2 * s), hi = (1 - c1) * (1 - c1) / (base - 2 * s);
  const auto p = density_grid(L, 1000);
  CHECK(normalization_check(p) <= 1e-3);
  const auto ends = support_endpoints(L).endpoints;
  for (double e : {lo, hi})
    CHECK(std::any_of(ends.begin(), ends.end(), [&](double v) { return std::abs(v - e) <= 1e-9; }));
  // l1^2 - 4 l2 l0 = ((c1 - c2)^2 + 4) (x - lo) (x - hi).
  const double lead = (c1 - c2) * (c1 - c2) + 4;
  for (double x : {0.25, 0.4, 0.6, 0.9}) {
    const double l2 = c1 * x + x * x * x * c1 - 2 * c1 * x * x - c2 * x * x * x + c2 * x * x;
    const double f = std::sqrt(lead * (x - lo) * (hi - x)) / (2 * std::numbers::pi * l2);
    CHECK(std::abs(test::density_at(L, x) - f) <= 1e-8);
  }
}

TEST_CASE("total mass over the corpus") {
  for (const BiPoly& L : {wigner(), wishart(2), wishart(q(1, 2)), half_half(), free_add(wigner(), wishart(q(1, 2))),
                          free_mul(wigner(), wishart(q(1, 2))), compress(half_half(), q(2, 5)), jacobi(q(1, 10), q(5, 8))}) {
    INFO(to_string(L));
    CHECK(normalization_check(density_grid(L, 1000)) <= 1e-3);
  }
}

TEST_CASE("csv and sidecar") {
  const auto p = density_grid(wishart(2), 0, 6, 7);
  const std::string csv = density_csv(p);
  CHECK(csv.rfind("z,f\n", 0) == 0);
  // z = 0 is the pole carrying the atom and gets no row.
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 7);
  CHECK(csv.find("\n0,") == std::string::npos);
  CHECK(csv.find("\n2,0.10527") != std::string::npos);
  const auto j = nlohmann::json::parse(density_sidecar_json(p));
  CHECK(j.contains("atoms"));
  CHECK(j.contains("endpoints"));
  CHECK(j.contains("total_mass"));
}
