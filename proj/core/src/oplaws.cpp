#include "rmcalc/oplaws.hpp"

#include <set>

#include "rmcalc/algops.hpp"
#include "rmcalc/encodings.hpp"
#include "rmcalc/errors.hpp"
#include "rmcalc/linalg.hpp"
#include "rmcalc/moments.hpp"

namespace rmcalc {

namespace {

struct MZ {
  BiPoly one = BiPoly::constant("m", "z", Rational(1));
  BiPoly m = BiPoly::u_var("m", "z");
  BiPoly z = BiPoly::v_var("m", "z");
  BiPoly k(const Rational& c) const { return BiPoly::constant("m", "z", c); }
};

void require_mz(const BiPoly& L, const char* op) {
  if (L.u_label() != "m" || L.v_label() != "z")
    throw InvalidArgument(std::string(op) + ": expected an Lmz polynomial in (m, z), got (" + L.u_label() + ", " +
                          L.v_label() + ")");
}

void require_positive(const Rational& c, const char* op, const char* name) {
  if (sgn(c) <= 0) throw InvalidArgument(std::string(op) + ": " + name + " must be > 0");
}

using Series = std::vector<Rational>;

Series series_mul(const Series& a, const Series& b, std::size_t k) {
  Series out(k);
  for (std::size_t i = 0; i < k && i < a.size(); ++i) {
    if (sgn(a[i]) == 0) continue;
    for (std::size_t j = 0; i + j < k && j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

// L(mu(z), z) mod z^k from precomputed powers of mu.
bool annihilates(const QPoly2& L, const std::vector<Series>& pw, std::size_t k) {
  Series acc(k);
  for (int j = 0; j <= L.degree(); ++j) {
    const QPoly& row = L[j];
    for (int e = 0; e <= row.degree(); ++e) {
      if (sgn(row[e]) == 0) continue;
      for (std::size_t n = static_cast<std::size_t>(e); n < k; ++n) acc[n] += row[e] * pw[j][n - static_cast<std::size_t>(e)];
    }
  }
  for (const auto& c : acc)
    if (sgn(c) != 0) return false;
  return true;
}

}  // namespace

void validate(const AtomicSpec& t) {
  if (t.masses.empty()) throw InvalidArgument("atomic: at least one mass is required");
  Rational total = 0;
  std::set<Rational> seen;
  for (const auto& a : t.masses) {
    if (sgn(a.weight) <= 0 || a.weight > 1) throw InvalidArgument("atomic: weights must lie in (0, 1]");
    if (!seen.insert(a.location).second) throw InvalidArgument("atomic: locations must be distinct");
    total += a.weight;
  }
  if (total != 1) throw InvalidArgument("atomic: weights must sum to 1, got " + to_string(total));
}

BiPoly atomic(const AtomicSpec& t) {
  validate(t);
  const MZ v;
  BiPoly prod = v.one, sum = v.k(Rational(0));
  for (std::size_t i = 0; i < t.masses.size(); ++i) {
    prod = prod * (v.k(t.masses[i].location) - v.z);
    BiPoly others = v.k(t.masses[i].weight);
    for (std::size_t j = 0; j < t.masses.size(); ++j)
      if (j != i) others = others * (v.k(t.masses[j].location) - v.z);
    sum = sum + others;
  }
  return canonicalize(prod * v.m - sum);
}

BiPoly identity_law() { return atomic({{{Rational(1), Rational(1)}}}); }

BiPoly wigner() {
  const MZ v;
  return canonicalize(v.m * v.m + v.z * v.m + v.one);
}

BiPoly wishart(const Rational& c) {
  require_positive(c, "wishart", "c");
  const MZ v;
  return canonicalize(v.k(c) * v.z * v.m * v.m - (v.k(1 - c) - v.z) * v.m + v.one);
}

BiPoly mobius(const BiPoly& L, const MobiusParams& mp) {
  require_mz(L, "mobius");
  if (sgn(mp.r) == 0 && sgn(mp.s) == 0) throw InvalidArgument("mobius: r and s cannot both be zero");
  const Rational det = mp.s * mp.p - mp.r * mp.q;
  if (sgn(det) == 0) throw InvalidArgument("mobius: degenerate map (ps - qr = 0)");
  const MZ v;
  const BiPoly d = v.k(mp.p) - v.k(mp.r) * v.z;
  return substitute_rational(L, (v.m * d - v.k(mp.r)) * d, v.k(det), v.k(mp.s) * v.z - v.k(mp.q), d);
}

BiPoly inverse_law(const BiPoly& L) { return mobius(L, {Rational(0), Rational(1), Rational(1), Rational(0)}); }

BiPoly scale_law(const BiPoly& L, const Rational& alpha) {
  if (sgn(alpha) == 0) throw InvalidArgument("scale: factor must be nonzero");
  return mobius(L, {alpha, Rational(0), Rational(0), Rational(1)});
}

BiPoly shift_law(const BiPoly& L, const Rational& alpha) {
  return mobius(L, {Rational(1), alpha, Rational(0), Rational(1)});
}

BiPoly transpose_swap(const BiPoly& L, const Rational& c) {
  require_mz(L, "transpose_swap");
  require_positive(c, "transpose_swap", "c");
  const MZ v;
  return substitute_rational(L, v.m * v.z - v.k(c - 1), v.k(c) * v.z, v.z, v.one);
}

BiPoly square(const BiPoly& L) {
  require_mz(L, "square");
  const BiPoly one = BiPoly::constant("m", "w", Rational(1));
  const BiPoly m = BiPoly::u_var("m", "w");
  const BiPoly w = BiPoly::v_var("m", "w");
  const Rational two = 2;
  const BiPoly a = substitute_rational(L, two * m * w, one, w, one);
  const BiPoly b = substitute_rational(L, Rational(-2) * m * w, one, -w, one);
  const BiPoly sum = alg_add(a, b);
  std::vector<std::vector<Rational>> rows;
  for (int j = 0; j <= sum.du(); ++j) {
    const QPoly r = sum.row(j);
    std::vector<Rational> half;
    for (int k = 0; k <= r.degree(); ++k) {
      if (k % 2 == 1) {
        if (sgn(r[k]) != 0) throw ComputationError("square: intermediate polynomial is not even in sqrt(z)");
        continue;
      }
      half.push_back(r[k]);
    }
    rows.push_back(std::move(half));
  }
  return isolate_physical_factor(canonicalize(BiPoly::from_coeffs("m", "z", rows)));
}

BiPoly block_diag(const BiPoly& la, const BiPoly& lb, const Rational& c) {
  require_mz(la, "block_diag");
  require_mz(lb, "block_diag");
  if (sgn(c) <= 0 || c >= 1) throw InvalidArgument("block_diag: c must lie in (0, 1)");
  const MZ v;
  const BiPoly a = substitute_rational(la, v.m, v.k(c), v.z, v.one);
  const BiPoly b = substitute_rational(lb, v.m, v.k(1 - c), v.z, v.one);
  return isolate_physical_factor(alg_add(a, b));
}

BiPoly corner(const BiPoly& L, const Rational& c, const Rational& alpha) {
  require_mz(L, "corner");
  if (c < 1) throw InvalidArgument("corner: c = dim(A)/dim(B) must be >= 1");
  const MZ v;
  const BiPoly az = v.k(alpha) - v.z;
  return substitute_rational(L, v.m * az - v.k(1 - c), v.k(c) * az, v.z, v.one);
}

BiPoly add_atomic_wishart(const BiPoly& L, const Rational& c, const AtomicSpec& t) {
  require_mz(L, "add_atomic_wishart");
  require_positive(c, "add_atomic_wishart", "c");
  validate(t);
  const MZ v;
  // z -> z - c sum p_i l_i / (1 + l_i m), over the common denominator.
  BiPoly prod = v.one, sum = v.k(Rational(0));
  for (std::size_t i = 0; i < t.masses.size(); ++i) {
    prod = prod * (v.one + v.k(t.masses[i].location) * v.m);
    BiPoly term = v.k(t.masses[i].weight * t.masses[i].location);
    for (std::size_t j = 0; j < t.masses.size(); ++j)
      if (j != i) term = term * (v.one + v.k(t.masses[j].location) * v.m);
    sum = sum + term;
  }
  return substitute_rational(L, v.m, v.one, v.z * prod - v.k(c) * sum, prod);
}

BiPoly multiply_wishart(const BiPoly& L, const Rational& c) {
  require_mz(L, "multiply_wishart");
  require_positive(c, "multiply_wishart", "c");
  const MZ v;
  const BiPoly alpha = v.k(1 - c) - v.k(c) * v.z * v.m;
  return substitute_rational(L, alpha * v.m, v.one, v.z, alpha);
}

BiPoly info_plus_noise(const BiPoly& L, const Rational& c, const Rational& s) {
  require_mz(L, "info_plus_noise");
  require_positive(c, "info_plus_noise", "c");
  if (sgn(s) < 0) throw InvalidArgument("info_plus_noise: s must be >= 0");
  const MZ v;
  const BiPoly alpha = v.one + v.k(s * c) * v.m;
  return substitute_rational(L, v.m, alpha, alpha * alpha * v.z + v.k(s * (c - 1)) * alpha, v.one);
}

BiPoly free_add(const BiPoly& la, const BiPoly& lb) {
  require_mz(la, "free_add");
  require_mz(lb, "free_add");
  const BiPoly sum = alg_add(from_mz(la, Kind::rg), from_mz(lb, Kind::rg));
  return isolate_physical_factor(to_mz(sum, Kind::rg));
}

BiPoly free_mul(const BiPoly& la, const BiPoly& lb) {
  require_mz(la, "free_mul");
  require_mz(lb, "free_mul");
  const BiPoly prod = alg_mul(from_mz(la, Kind::sy), from_mz(lb, Kind::sy));
  return isolate_physical_factor(to_mz(prod, Kind::sy));
}

BiPoly compress(const BiPoly& L, const Rational& c) {
  require_mz(L, "compress");
  if (sgn(c) <= 0 || c > 1) throw InvalidArgument("compress: c must lie in (0, 1]");
  const BiPoly lrg = from_mz(L, Kind::rg);
  const BiPoly one = BiPoly::constant("r", "g", Rational(1));
  const BiPoly scaled = substitute_rational(lrg, BiPoly::u_var("r", "g"), one, c * BiPoly::v_var("r", "g"), one);
  return to_mz(scaled, Kind::rg);
}

BiPoly wishart_covariance(const BiPoly& la, const BiPoly& lb, const Rational& c) {
  require_mz(la, "wishart_covariance");
  require_mz(lb, "wishart_covariance");
  require_positive(c, "wishart_covariance", "c");
  // B^{1/2} G'G B^{1/2} is c times B x W(1/c); its n x n partner follows by
  // the transpose law with ratio N/n = 1/c.
  const Rational inv_c = 1 / c;
  const BiPoly t_big = scale_law(multiply_wishart(lb, inv_c), c);
  const BiPoly t = transpose_swap(t_big, inv_c);
  return free_mul(la, t);
}

BiPoly isolate_physical_factor(const BiPoly& L) {
  require_mz(L, "isolate_physical_factor");
  const BiPoly canon = canonicalize(L);
  if (canon.du() <= 1) return canon;
  const BiPoly lmu = from_mz(canon, Kind::muz);
  const int du = lmu.du(), dv = lmu.dv();
  if (du <= 1) return canon;
  const auto k = static_cast<std::size_t>(2 * (du + 1) * (dv + 1) + 10);
  Series mu;
  try {
    mu = moment_series(lmu, static_cast<int>(k) - 1, Kind::muz).coeffs;
  } catch (const ComputationError&) {
    return canon;
  }
  std::vector<Series> pw{Series(k)};
  pw[0][0] = 1;
  for (int j = 1; j <= du; ++j) pw.push_back(series_mul(pw.back(), mu, k));

  for (int d = 1; d < du; ++d) {
    for (int e = 0; e <= dv; ++e) {
      const std::size_t unknowns = static_cast<std::size_t>((d + 1) * (e + 1));
      RationalMatrix a(k, unknowns);
      for (std::size_t n = 0; n < k; ++n)
        for (int j = 0; j <= d; ++j)
          for (int f = 0; f <= e && static_cast<std::size_t>(f) <= n; ++f)
            a(n, static_cast<std::size_t>(j * (e + 1) + f)) = pw[j][n - static_cast<std::size_t>(f)];
      for (const auto& vec : nullspace(std::move(a))) {
        std::vector<QPoly> rows;
        for (int j = 0; j <= d; ++j)
          rows.emplace_back(std::vector<Rational>(vec.begin() + j * (e + 1), vec.begin() + (j + 1) * (e + 1)));
        const QPoly2 p(std::move(rows));
        if (p.degree() < 1) continue;
        const QPoly2 g = poly_gcd(lmu.poly(), p);
        if (g.degree() < 1 || g.degree() >= du || !annihilates(g, pw, k)) continue;
        // Certificate: g divides L and the cofactor does not vanish on the series.
        QPoly2 cofactor;
        try {
          cofactor = poly_divexact(lmu.poly(), g);
        } catch (const ComputationError&) {
          continue;
        }
        if (annihilates(cofactor, pw, k)) continue;
        return to_mz(BiPoly("mu", "z", g), Kind::muz);
      }
    }
  }
  return canon;
}

}  // namespace rmcalc
