#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "rmcalc/bipoly.hpp"
#include "rmcalc/density.hpp"
#include "rmcalc/roots.hpp"

namespace rmcalc::test {

inline BiPoly mz(const std::string& text) { return parse_bipoly(text, "m", "z"); }

inline Rational q(long n, long d = 1) { return Rational(n, d); }

// Roots in u of L(u, v0) for a rational v0.
inline std::vector<cdouble> slice_roots(const BiPoly& L, const Rational& v0) {
  const QPoly s = eval_slice_exact(L, v0);
  std::vector<cdouble> c;
  for (const auto& x : s.coeffs()) c.emplace_back(to_double(x), 0.0);
  return aberth(c).roots;
}

// Largest distance from a point of `a` to the nearest point of `b`, relative
// to 1 + |point|.
inline double one_sided_gap(const std::vector<cdouble>& a, const std::vector<cdouble>& b) {
  double worst = 0;
  for (const auto& x : a) {
    double best = INFINITY;
    for (const auto& y : b) best = std::min(best, std::abs(x - y));
    worst = std::max(worst, best / (1 + std::abs(x)));
  }
  return worst;
}

inline double multiset_gap(const std::vector<cdouble>& a, const std::vector<cdouble>& b) {
  return std::max(one_sided_gap(a, b), one_sided_gap(b, a));
}

// Random polynomial with small integer coefficients, degree du in u and at
// most dv in v, leading row nonzero.
inline BiPoly random_bipoly(std::mt19937_64& g, int du, int dv) {
  std::uniform_int_distribution<int> coef(-4, 4);
  std::vector<std::vector<Rational>> rows(static_cast<std::size_t>(du) + 1);
  for (auto& r : rows) {
    r.resize(static_cast<std::size_t>(dv) + 1);
    for (auto& x : r) x = coef(g);
  }
  if (rows.back()[0] == 0) rows.back()[0] = 1;
  if (rows.front()[0] == 0) rows.front()[0] = 1;
  return BiPoly::from_coeffs("u", "v", rows);
}

inline double semicircle_density(double x) {
  return std::abs(x) < 2 ? std::sqrt(4 - x * x) / (2 * std::numbers::pi) : 0.0;
}

// Marchenko-Pastur with ratio c, continuous part.
inline double mp_density(double c, double x) {
  const double lo = std::pow(1 - std::sqrt(c), 2), hi = std::pow(1 + std::sqrt(c), 2);
  if (x <= lo || x >= hi) return 0.0;
  return std::sqrt((x - lo) * (hi - x)) / (2 * std::numbers::pi * c * x);
}

// Density value of a profile at grid index nearest to x, via physical_branch_real.
inline double density_at(const BiPoly& L, double x, double scale = 10) {
  auto m = physical_branch_real(L, x, scale);
  return m ? m->imag() / std::numbers::pi : NAN;
}

}  // namespace rmcalc::test
