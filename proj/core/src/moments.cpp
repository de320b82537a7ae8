#include "rmcalc/moments.hpp"

#include <cmath>

#include "rmcalc/algops.hpp"
#include "rmcalc/errors.hpp"
#include "rmcalc/linalg.hpp"

namespace rmcalc {

namespace {

constexpr int kHoldOut = 8;
constexpr int kMaxLift = 4;

Rational eval_at_origin(const BiPoly& L, const Rational& u) {
  Rational acc = 0;
  for (int j = L.du(); j >= 0; --j) acc = acc * u + L.coeff(j, 0);
  return acc;
}

Rational du_at_origin(const BiPoly& L, const Rational& u) {
  Rational acc = 0;
  for (int j = L.du(); j >= 1; --j) acc = acc * u + L.coeff(j, 0) * j;
  return acc;
}

std::vector<Rational> simple_series(const BiPoly& L, const Rational& seed, int n_terms, const Rational& fu) {
  const int du = L.du();
  const auto n = static_cast<std::size_t>(n_terms);
  std::vector<Rational> a(n);
  a[0] = seed;
  std::vector<Rational> seed_pow(static_cast<std::size_t>(du) + 1);
  seed_pow[0] = 1;
  for (int j = 1; j <= du; ++j) seed_pow[j] = seed_pow[j - 1] * seed;
  // p[j][i]: coefficient of v^i in u(v)^j; p0 holds the part free of a_i.
  std::vector<std::vector<Rational>> p(static_cast<std::size_t>(du) + 1, std::vector<Rational>(n));
  std::vector<Rational> p0(static_cast<std::size_t>(du) + 1);
  for (int j = 0; j <= du; ++j) p[j][0] = seed_pow[j];
  std::vector<QPoly> rows(static_cast<std::size_t>(du) + 1);
  for (int j = 0; j <= du; ++j) rows[j] = L.row(j);

  for (std::size_t i = 1; i < n; ++i) {
    p0[0] = 0;
    for (int j = 1; j <= du; ++j) {
      Rational s = p0[j - 1] * a[0];
      for (std::size_t k = 1; k < i; ++k) s += p[j - 1][k] * a[i - k];
      p0[j] = s;
    }
    Rational r = 0;
    for (int j = 0; j <= du; ++j) {
      const QPoly& lj = rows[j];
      for (int k = 0; k <= lj.degree() && static_cast<std::size_t>(k) <= i; ++k) {
        if (sgn(lj[k]) == 0) continue;
        r += lj[k] * (k == 0 ? p0[j] : p[j][i - static_cast<std::size_t>(k)]);
      }
    }
    a[i] = -r / fu;
    for (int j = 0; j <= du; ++j) p[j][i] = p0[j] + (j > 0 ? seed_pow[j - 1] * j * a[i] : Rational(0));
  }
  return a;
}

std::vector<std::vector<Rational>> series_candidates(const BiPoly& L, const Rational& seed, int n_terms, int depth) {
  if (sgn(eval_at_origin(L, seed)) != 0) return {};
  const Rational fu = du_at_origin(L, seed);
  if (sgn(fu) != 0) return {simple_series(L, seed, n_terms, fu)};
  if (depth >= kMaxLift) throw ComputationError("series: seed root stays multiple after repeated lifting");
  if (n_terms == 1) return {{seed}};
  // u = seed + v w, then strip the power of v.
  const std::string& U = L.u_label();
  const std::string& V = L.v_label();
  const BiPoly one = BiPoly::constant(U, V, Rational(1));
  const BiPoly g = canonicalize(substitute_raw(L, BiPoly::constant(U, V, seed) + BiPoly::v_var(U, V) * BiPoly::u_var(U, V),
                                               one, BiPoly::v_var(U, V), one));
  QPoly g0;
  for (int j = 0; j <= g.du(); ++j) g0.set_coeff(j, g.coeff(j, 0));
  const auto w0s = rational_roots(g0);
  if (w0s.empty() && g0.degree() > 0)
    throw ComputationError("series: branch through " + to_string(seed) + " has irrational coefficients");
  std::vector<std::vector<Rational>> out;
  for (const Rational& w0 : w0s) {
    for (auto& w : series_candidates(g, w0, n_terms - 1, depth + 1)) {
      std::vector<Rational> a(static_cast<std::size_t>(n_terms));
      a[0] = seed;
      for (std::size_t i = 0; i + 1 < a.size(); ++i) a[i + 1] = w[i];
      out.push_back(std::move(a));
    }
  }
  return out;
}

bool even_moments_nonnegative(const std::vector<Rational>& m) {
  for (std::size_t i = 0; i < m.size(); i += 2)
    if (sgn(m[i]) < 0) return false;
  return hankel_psd(m, std::min<int>(4, static_cast<int>((m.size() + 1) / 2)));
}

}  // namespace

std::vector<Rational> series_root(const BiPoly& L, const Rational& seed, int n_terms,
                                  const std::function<bool(const std::vector<Rational>&)>& accept) {
  if (n_terms < 1) throw InvalidArgument("series: need at least one term");
  if (L.du() < 1) throw InvalidArgument("series: polynomial has no " + L.u_label() + " dependence");
  auto cands = series_candidates(L, seed, n_terms, 0);
  if (cands.empty()) throw ComputationError("series: " + to_string(seed) + " is not a root at the origin");
  if (cands.size() > 1 && accept) {
    std::vector<std::vector<Rational>> kept;
    for (auto& c : cands)
      if (accept(c)) kept.push_back(std::move(c));
    cands = std::move(kept);
  }
  if (cands.size() != 1)
    throw ComputationError("series: " + std::to_string(cands.size()) + " admissible branches through the seed");
  return cands.front();
}

MomentSeries moment_series(const BiPoly& L, int N, Kind kind) {
  if (N < 0) throw InvalidArgument("moment_series: N must be >= 0");
  const BiPoly lmu = convert(L, kind, Kind::muz);
  if (sgn(eval_at_origin(lmu, Rational(1))) != 0)
    throw ComputationError("moment_series: no branch with mu(0) = 1; the distribution may lack moments");
  return {series_root(lmu, Rational(1), N + 1, even_moments_nonnegative), Kind::muz};
}

MomentSeries cumulant_series(const BiPoly& L, int N, Kind kind) {
  if (N < 0) throw InvalidArgument("cumulant_series: N must be >= 0");
  const BiPoly lrg = convert(L, kind, Kind::rg);
  QPoly r0;
  for (int j = 0; j <= lrg.du(); ++j) r0.set_coeff(j, lrg.coeff(j, 0));
  const auto seeds = rational_roots(r0);
  Rational seed;
  if (seeds.size() == 1) {
    seed = seeds.front();
  } else {
    // K_1 = M_1 picks the seed.
    const Rational m1 = moment_series(L, 1, kind).coeffs[1];
    bool found = false;
    for (const auto& s : seeds) found = found || s == m1;
    if (!found) throw ComputationError("cumulant_series: no admissible seed for r(0)");
    seed = m1;
  }
  return {series_root(lrg, seed, N + 1), Kind::rg};
}

std::string to_string(const Recurrence& r) {
  std::string out;
  for (int i = 0; i <= r.order; ++i) {
    const QPoly& p = r.coeffs[i];
    if (p.is_zero()) continue;
    if (!out.empty()) out += " + ";
    out += "(" + to_string(p, "n") + ")*a(n" + (i ? "+" + std::to_string(i) : std::string()) + ")";
  }
  return out + " = 0";
}

bool recurrence_holds(const Recurrence& r, const std::vector<Rational>& seq) {
  const int len = static_cast<int>(seq.size());
  for (int n = 0; n + r.order < len; ++n) {
    Rational s = 0;
    for (int i = 0; i <= r.order; ++i) s += eval(r.coeffs[i], Rational(n)) * seq[n + i];
    if (sgn(s) != 0) return false;
  }
  return true;
}

std::optional<Recurrence> fit_recurrence(const std::vector<Rational>& seq, int max_order, int max_degree) {
  if (max_order < 1 || max_degree < 0) throw InvalidArgument("fit_recurrence: bounds must be order >= 1, degree >= 0");
  const int len = static_cast<int>(seq.size());
  for (int e = 1; e <= max_order; ++e) {
    for (int d = 0; d <= max_degree; ++d) {
      const int unknowns = (e + 1) * (d + 1);
      const int rows = len - kHoldOut - e;
      if (rows < unknowns) continue;
      RationalMatrix a(static_cast<std::size_t>(rows), static_cast<std::size_t>(unknowns));
      for (int n = 0; n < rows; ++n) {
        for (int i = 0; i <= e; ++i) {
          Rational np = 1;
          for (int k = 0; k <= d; ++k) {
            a(n, i * (d + 1) + k) = np * seq[n + i];
            np *= n;
          }
        }
      }
      for (const auto& v : nullspace(std::move(a))) {
        Recurrence r{e, d, {}};
        for (int i = 0; i <= e; ++i) {
          std::vector<Rational> c(v.begin() + i * (d + 1), v.begin() + (i + 1) * (d + 1));
          r.coeffs.emplace_back(std::move(c));
        }
        if (r.coeffs[e].is_zero()) continue;
        if (!recurrence_holds(r, seq)) continue;
        // Integer primitive coefficients with a positive leading polynomial.
        Rational g = 0;
        for (const auto& p : r.coeffs)
          for (const auto& c : p.coeffs()) g = rational_gcd(g, c);
        if (sgn(r.coeffs[e].lead()) < 0) g = -g;
        for (auto& p : r.coeffs) p = divide_coeffs(p, g);
        return r;
      }
    }
  }
  return std::nullopt;
}

std::vector<double> moments_from_density(const DensityProfile& profile, int k) {
  std::vector<double> out(static_cast<std::size_t>(k) + 1, 0.0);
  for (std::size_t i = 0; i < profile.quad_nodes.size(); ++i) {
    const double wf = profile.quad_weights[i] * profile.quad_density[i];
    double xp = 1;
    for (int j = 0; j <= k; ++j, xp *= profile.quad_nodes[i]) out[j] += wf * xp;
  }
  for (const auto& a : profile.atoms) {
    double xp = 1;
    for (int j = 0; j <= k; ++j, xp *= a.location) out[j] += a.weight * xp;
  }
  return out;
}

bool hankel_psd(const std::vector<Rational>& m, int size) {
  if (size <= 0) return true;
  if (static_cast<int>(m.size()) < 2 * size - 1) throw InvalidArgument("hankel_psd: not enough moments");
  for (unsigned mask = 1; mask < (1u << size); ++mask) {
    std::vector<int> idx;
    for (int i = 0; i < size; ++i)
      if (mask & (1u << i)) idx.push_back(i);
    Matrix<Rational> h(idx.size(), idx.size());
    for (std::size_t i = 0; i < idx.size(); ++i)
      for (std::size_t j = 0; j < idx.size(); ++j) h(i, j) = m[idx[i] + idx[j]];
    if (sgn(det_bareiss(h)) < 0) return false;
  }
  return true;
}

}  // namespace rmcalc
