#include "rmcalc/roots.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "rmcalc/errors.hpp"

namespace rmcalc {

cdouble horner(const std::vector<cdouble>& coeffs, cdouble x) {
  cdouble acc = 0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
  return acc;
}

namespace {

// p(x) and p'(x) together.
std::pair<cdouble, cdouble> horner2(const std::vector<cdouble>& c, cdouble x) {
  cdouble p = 0, dp = 0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) {
    dp = dp * x + p;
    p = p * x + *it;
  }
  return {p, dp};
}

}  // namespace

AberthResult aberth(const std::vector<cdouble>& coeffs, const std::vector<cdouble>* init, double tol, int max_iter) {
  std::size_t top = coeffs.size();
  while (top > 0 && coeffs[top - 1] == cdouble(0)) --top;
  if (top == 0) throw ComputationError("aberth: zero polynomial");
  std::size_t low = 0;
  while (coeffs[low] == cdouble(0)) ++low;

  AberthResult out;
  out.roots.assign(low, cdouble(0));
  const int n = static_cast<int>(top - low) - 1;
  if (n <= 0) {
    out.converged = true;
    return out;
  }
  std::vector<cdouble> c(coeffs.begin() + static_cast<std::ptrdiff_t>(low), coeffs.begin() + static_cast<std::ptrdiff_t>(top));
  const cdouble lead = c.back();
  for (auto& x : c) x /= lead;

  std::vector<cdouble> z(static_cast<std::size_t>(n));
  if (n == 1) {
    out.roots.push_back(-c[0]);
    out.converged = true;
    return out;
  }
  bool warm = false;
  if (init && init->size() >= static_cast<std::size_t>(n) + low) {
    // Zero roots were deflated; use the nonzero part of the warm start.
    std::vector<cdouble> w(*init);
    std::sort(w.begin(), w.end(), [](cdouble a, cdouble b) { return std::abs(a) > std::abs(b); });
    w.resize(static_cast<std::size_t>(n));
    z = w;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < i; ++j)
        if (std::abs(z[i] - z[j]) < 1e-14 * (1 + std::abs(z[i]))) z[i] += cdouble(1e-7, 1e-7) * (1 + std::abs(z[i]));
    warm = true;
  }
  if (!warm) {
    double r = 0;
    for (int k = 0; k < n; ++k) r = std::max(r, std::pow(std::abs(c[static_cast<std::size_t>(k)]), 1.0 / (n - k)));
    r = std::max(2 * r, 1e-300);
    for (int k = 0; k < n; ++k)
      z[static_cast<std::size_t>(k)] = std::polar(r, 2 * std::numbers::pi * k / n + 0.4);
  }

  std::vector<bool> done(static_cast<std::size_t>(n), false);
  int it = 0;
  for (; it < max_iter; ++it) {
    bool all = true;
    for (int i = 0; i < n; ++i) {
      if (done[i]) continue;
      auto [p, dp] = horner2(c, z[i]);
      if (p == cdouble(0)) {
        done[i] = true;
        continue;
      }
      const cdouble ratio = p / dp;
      cdouble s = 0;
      for (int j = 0; j < n; ++j)
        if (j != i) s += 1.0 / (z[i] - z[j]);
      const cdouble w = ratio / (1.0 - ratio * s);
      z[i] -= w;
      if (std::abs(w) <= tol * std::abs(z[i]) || !std::isfinite(std::abs(z[i])))
        done[i] = true;
      else
        all = false;
    }
    if (all) break;
  }
  out.converged = it < max_iter;
  for (auto& x : z) {
    // One Newton polish step.
    auto [p, dp] = horner2(c, x);
    if (dp != cdouble(0)) {
      const cdouble nx = x - p / dp;
      if (std::abs(horner(c, nx)) < std::abs(p)) x = nx;
    }
    out.roots.push_back(x);
  }
  out.iterations = it;
  return out;
}

std::vector<QPoly> sturm_sequence(const QPoly& p) {
  std::vector<QPoly> seq{normalize(p)};
  if (p.degree() < 1) return seq;
  seq.push_back(normalize(p.derivative()));
  while (true) {
    QPoly r = divmod(seq[seq.size() - 2], seq.back()).second;
    if (r.is_zero()) break;
    // Rescale by a positive constant only; signs must survive.
    Rational c = ring::content(r);
    r = -divide_coeffs(r, c);
    seq.push_back(std::move(r));
  }
  return seq;
}

int sign_variations(const std::vector<QPoly>& seq, const Rational& x) {
  int count = 0, last = 0;
  for (const auto& q : seq) {
    const int s = sgn(eval(q, x));
    if (s == 0) continue;
    if (last != 0 && s != last) ++count;
    last = s;
  }
  return count;
}

namespace {

QPoly squarefree_part(const QPoly& p) {
  const QPoly g = poly_gcd(p, p.derivative());
  return g.degree() > 0 ? normalize(poly_divexact(p, g)) : normalize(p);
}

Rational cauchy_bound(const QPoly& p) {
  Rational m = 0;
  const Rational lead = abs(p.lead());
  for (int i = 0; i < p.degree(); ++i) {
    Rational r = abs(p[i]) / lead;
    if (r > m) m = r;
  }
  return m + 1;
}

}  // namespace

std::vector<RootInterval> isolate_real_roots(const QPoly& p) {
  std::vector<RootInterval> out;
  if (p.degree() < 1) return out;
  const QPoly sq = squarefree_part(p);
  const auto seq = sturm_sequence(sq);
  const Rational b = cauchy_bound(sq);
  struct Item {
    Rational lo, hi;
    int vlo, vhi;
  };
  std::vector<Item> stack{{-b, b, sign_variations(seq, -b), sign_variations(seq, b)}};
  while (!stack.empty()) {
    Item it = std::move(stack.back());
    stack.pop_back();
    const int count = it.vlo - it.vhi;
    if (count <= 0) continue;
    if (count == 1) {
      if (sgn(eval(sq, it.hi)) == 0)
        out.push_back({it.hi, it.hi});
      else
        out.push_back({it.lo, it.hi});
      continue;
    }
    Rational mid = (it.lo + it.hi) / 2;
    const int vm = sign_variations(seq, mid);
    stack.push_back({mid, it.hi, vm, it.vhi});
    stack.push_back({it.lo, mid, it.vlo, vm});
  }
  std::sort(out.begin(), out.end(), [](const RootInterval& a, const RootInterval& b) { return a.hi < b.hi; });
  return out;
}

void refine_root(const QPoly& sq, RootInterval& iv, const Rational& width) {
  if (iv.lo == iv.hi) return;
  const int shi = sgn(eval(sq, iv.hi));
  while (iv.hi - iv.lo > width) {
    Rational mid = (iv.lo + iv.hi) / 2;
    const int s = sgn(eval(sq, mid));
    if (s == 0) {
      iv.lo = iv.hi = mid;
      return;
    }
    if (s == shi)
      iv.hi = mid;
    else
      iv.lo = mid;
  }
}

std::vector<double> real_roots(const QPoly& p, double rel_tol) {
  std::vector<double> out;
  if (p.degree() < 1) return out;
  const QPoly sq = squarefree_part(p);
  for (auto iv : isolate_real_roots(sq)) {
    const double mag = std::max(1.0, std::max(std::abs(to_double(iv.lo)), std::abs(to_double(iv.hi))));
    refine_root(sq, iv, Rational(rel_tol * mag));
    out.push_back(to_double((iv.lo + iv.hi) / 2));
  }
  return out;
}

std::vector<Rational> rational_roots(const QPoly& p) {
  std::vector<Rational> out;
  if (p.degree() < 1) return out;
  const QPoly sq = squarefree_part(p);
  // Integer coefficients: a rational root k/a has a dividing the lead.
  Integer den = 1;
  for (const auto& c : sq.coeffs()) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
  const Integer lead = abs(Integer(sq.lead() * den));
  for (auto iv : isolate_real_roots(sq)) {
    if (iv.lo == iv.hi) {
      out.push_back(iv.lo);
      continue;
    }
    refine_root(sq, iv, Rational(1, 4) / Rational(lead));
    if (iv.lo == iv.hi) {
      out.push_back(iv.lo);
      continue;
    }
    Rational mid = (iv.lo + iv.hi) / 2 * lead;
    Integer k = mid.get_num() / mid.get_den();
    for (Integer kk : {Integer(k - 1), k, Integer(k + 1)}) {
      Rational cand(kk, lead);
      cand.canonicalize();
      if (cand > iv.lo && cand <= iv.hi && sgn(eval(sq, cand)) == 0) {
        out.push_back(cand);
        break;
      }
    }
  }
  return out;
}

}  // namespace rmcalc
