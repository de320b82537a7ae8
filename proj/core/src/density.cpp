#include "rmcalc/density.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>

#include "json.hpp"
#include "rmcalc/errors.hpp"

namespace rmcalc {

namespace {

constexpr double kPoleSkip = 1e-8;
constexpr double kAtomFloor = 1e-5;

using Rows = std::vector<std::vector<double>>;

Rows to_rows(const std::vector<QPoly>& rows) {
  Rows out;
  for (const auto& row : rows) {
    std::vector<double> r;
    for (int k = 0; k <= row.degree(); ++k) r.push_back(to_double(row[k]));
    out.push_back(std::move(r));
  }
  return out;
}

// p(center + t) as a polynomial in t.
QPoly taylor_shift(const QPoly& p, const Rational& center) {
  const QPoly step(std::vector<Rational>{center, 1});
  QPoly acc;
  for (int k = p.degree(); k >= 0; --k) acc = acc * step + QPoly(p[k]);
  return acc;
}

// Double-precision copy of L for fast slice evaluation. Near a real pole the
// coefficients vanish and the expanded form cancels, so each pole keeps its
// own exact re-expansion in t = z - pole.
struct Curve {
  struct Local {
    double center = 0, radius = 0;
    Rows c;
  };
  int du = 0;
  Rows c;  // c[j][k]: coefficient of m^j z^k
  std::vector<Local> local;

  explicit Curve(const BiPoly& L) : du(L.du()) {
    std::vector<QPoly> rows;
    for (int j = 0; j <= du; ++j) rows.push_back(L.row(j));
    c = to_rows(rows);
    const auto poles = find_poles(L);
    for (std::size_t i = 0; i < poles.size(); ++i) {
      double gap = 0.1 * (1 + std::abs(poles[i]));
      for (std::size_t k = 0; k < poles.size(); ++k)
        if (k != i) gap = std::min(gap, 0.4 * std::abs(poles[k] - poles[i]));
      const Rational center(poles[i]);
      std::vector<QPoly> shifted;
      for (const auto& r : rows) shifted.push_back(taylor_shift(r, center));
      local.push_back({poles[i], gap, to_rows(shifted)});
    }
  }

  // Rows to use at z, and the argument to feed them.
  const Rows& frame(cdouble z, cdouble& t) const {
    for (const auto& l : local)
      if (std::abs(z - l.center) < l.radius) {
        t = z - l.center;
        return l.c;
      }
    t = z;
    return c;
  }

  static cdouble eval_row(const std::vector<double>& r, cdouble z) {
    cdouble acc = 0;
    for (auto it = r.rbegin(); it != r.rend(); ++it) acc = acc * z + *it;
    return acc;
  }

  SliceRoots slice_coeffs(cdouble z, std::vector<cdouble>& out) const {
    out.clear();
    cdouble t;
    const Rows& rows = frame(z, t);
    double mx = 0;
    for (const auto& r : rows) {
      out.push_back(eval_row(r, t));
      mx = std::max(mx, std::abs(out.back()));
    }
    if (mx == 0) throw ComputationError("singular slice: every coefficient vanishes");
    SliceRoots s;
    while (std::abs(out.back()) <= 1e-15 * mx && (rows.data() == c.data() || std::abs(out.back()) == 0)) {
      out.pop_back();
      s.degree_drop = true;
    }
    return s;
  }

  SliceRoots roots(cdouble z, const std::vector<cdouble>* warm = nullptr) const {
    std::vector<cdouble> co;
    SliceRoots s = slice_coeffs(z, co);
    s.roots = aberth(co, warm).roots;
    return s;
  }

  // dm/dz along the curve through (m, z).
  cdouble slope(cdouble m, cdouble z) const {
    cdouble lm = 0, lz = 0, mp = 1, mpm = 0;
    const Rows& rows = frame(z, z);
    for (int j = 0; j <= du; ++j) {
      const auto& r = rows[j];
      cdouble val = 0, der = 0;
      for (auto it = r.rbegin(); it != r.rend(); ++it) {
        der = der * z + val;
        val = val * z + *it;
      }
      lz += der * mp;
      if (j > 0) lm += val * static_cast<double>(j) * mpm;
      mpm = mp;
      mp *= m;
    }
    if (std::abs(lm) == 0) return 0;
    return -lz / lm;
  }
};

std::pair<std::size_t, double> nearest(const std::vector<cdouble>& roots, cdouble target, double* second = nullptr) {
  std::size_t best = 0;
  double d1 = std::numeric_limits<double>::infinity(), d2 = d1;
  for (std::size_t i = 0; i < roots.size(); ++i) {
    const double d = std::abs(roots[i] - target);
    if (d < d1) {
      d2 = d1;
      d1 = d;
      best = i;
    } else if (d < d2) {
      d2 = d;
    }
  }
  if (second) *second = d2;
  return {best, d1};
}

class Tracker {
 public:
  Tracker(const BiPoly& L, double scale) : curve_(L), scale_(scale) {
    if (curve_.du < 1) throw InvalidArgument("density: polynomial has no m dependence");
    poles_ = find_poles(L);
  }

  const Curve& curve() const { return curve_; }

  cdouble at(double x, double y) const {
    const double top = std::max(1e4 * (scale_ + std::abs(x)), y);
    const cdouble za(x, top);
    auto s = curve_.roots(za);
    const cdouble ref = -1.0 / za;
    auto [idx, d] = nearest(s.roots, ref);
    if (d > 0.5 * std::abs(ref))
      throw ComputationError("density: no branch behaves like -1/z far from the real axis");
    cdouble m = s.roots[idx];
    std::vector<cdouble> warm = s.roots;
    double cur = top;
    while (cur > y) {
      const double full = std::max(cur * 0.5, y);
      double target = full;
      for (int tries = 0;; ++tries) {
        // Shorter steps no longer separate the branches: precision bound, take the full step.
        if (tries == 8) target = full;
        const cdouble z0(x, cur), z1(x, target);
        const cdouble pred = predict(m, z0, z1);
        auto r = curve_.roots(z1, &warm);
        double d2 = 0;
        auto [k, d1] = nearest(r.roots, pred, &d2);
        if (d1 <= 0.25 * d2 || tries == 8) {
          m = r.roots[k];
          warm = std::move(r.roots);
          cur = target;
          break;
        }
        target = cur - (cur - target) * 0.5;
      }
    }
    return m;
  }

  // Limit on the real axis; nullopt at a pole.
  std::optional<cdouble> real(double x, double eps) const {
    auto s = curve_.roots(cdouble(x, 0));
    if (s.degree_drop) return std::nullopt;
    const cdouble above = at(x, eps);
    std::vector<cdouble> upper;
    for (auto r : s.roots)
      if (r.imag() >= -1e-12 * (1 + std::abs(r))) upper.push_back(r);
    if (upper.empty()) return above;
    return upper[nearest(upper, above).first];
  }

 private:
  Curve curve_;
  double scale_;
  std::vector<double> poles_;

  // Far out, branches sharing the -1/z asymptote differ only at order 1/z^2,
  // so extrapolate u = z (z m + 1) there instead of m itself.
  cdouble predict(cdouble m, cdouble z0, cdouble z1) const {
    const cdouble dm = curve_.slope(m, z0);
    if (std::abs(z0) < 2 * scale_) {
      // Above a pole zeta, v = (z - zeta) m stays bounded while m blows up.
      for (double zeta : poles_) {
        if (std::abs(z0.real() - zeta) >= z0.imag()) continue;
        const cdouble v0 = (z0 - zeta) * m;
        const cdouble v1 = v0 + (m + (z0 - zeta) * dm) * (z1 - z0);
        return v1 / (z1 - zeta);
      }
      return m + dm * (z1 - z0);
    }
    const cdouble u0 = z0 * (z0 * m + 1.0);
    const cdouble du = 2.0 * z0 * m + z0 * z0 * dm + 1.0;
    const cdouble u1 = u0 + du * (z1 - z0);
    return (u1 / z1 - 1.0) / z1;
  }
};

double scale_of(const SupportInfo& s) {
  double r = 0;
  for (double e : s.endpoints) r = std::max(r, std::abs(e));
  for (double p : s.poles) r = std::max(r, std::abs(p));
  return 1 + r;
}

double pole_distance(const std::vector<double>& poles, double x) {
  double d = std::numeric_limits<double>::infinity();
  for (double p : poles) d = std::min(d, std::abs(x - p));
  return d;
}

std::vector<Atom> atoms_with(const Tracker& tr, const SupportInfo& sup,
                             std::vector<std::string>* warnings) {
  std::vector<Atom> out;
  // Aitken extrapolation of y Im m(z0 + iy) at geometric y; exact for w + a y^p.
  const auto aitken = [](double a, double b, double c) {
    const double d = (c - b) - (b - a);
    return std::abs(d) <= 1e-14 * (std::abs(a) + std::abs(c)) ? c : c - (c - b) * (c - b) / d;
  };
  for (double z0 : sup.poles) {
    double w[4];
    for (int i = 0; i < 4; ++i) {
      const double y = std::pow(10.0, -5 - i) * (1 + std::abs(z0));
      w[i] = y * tr.at(z0, y).imag();
    }
    const double r1 = aitken(w[0], w[1], w[2]), r2 = aitken(w[1], w[2], w[3]);
    char buf[160];
    if (std::abs(r2 - r1) > 1e-3) {
      if (warnings) {
        std::snprintf(buf, sizeof buf, "atom at %.12g: residue extrapolation did not converge (%.6g vs %.6g)", z0, r1, r2);
        warnings->push_back(buf);
      }
      continue;
    }
    double weight = r2;
    if (weight < -1e-6 || weight > 1 + 1e-6) {
      if (warnings) {
        std::snprintf(buf, sizeof buf, "atom at %.12g: inadmissible weight %.6g discarded", z0, weight);
        warnings->push_back(buf);
      }
      continue;
    }
    weight = std::clamp(weight, 0.0, 1.0);
    // Largest admissible residue over all branches, as a cross-check.
    const double y = 1e-8 * (1 + std::abs(z0));
    auto s = tr.curve().roots(cdouble(z0, y));
    double best = -1;
    for (auto r : s.roots) {
      const double c = y * r.imag();
      if (c > 1e-6 && c < 1 - 1e-9) best = std::max(best, c);
    }
    if (weight > kAtomFloor && best > 0 && std::abs(best - weight) > 1e-3 && warnings) {
      std::snprintf(buf, sizeof buf, "atom at %.12g: physical residue %.6g differs from largest admissible %.6g", z0,
                    weight, best);
      warnings->push_back(buf);
    }
    if (weight > kAtomFloor) out.push_back({z0, weight});
  }
  return out;
}

// Tanh-sinh on [a, b]; nodes closer than `skip` to a pole are dropped.
void tanh_sinh(const Tracker& tr, double a, double b, const std::vector<double>& poles, double eps,
               std::vector<double>& nodes, std::vector<double>& weights, std::vector<double>& dens, double& coarse,
               double& fine) {
  const double h = 1.0 / 16, tmax = 3.0;
  const double mid = (a + b) / 2, half = (b - a) / 2;
  coarse = fine = 0;
  for (int k = -static_cast<int>(tmax / h); k <= static_cast<int>(tmax / h); ++k) {
    const double t = k * h;
    const double u = std::numbers::pi / 2 * std::sinh(t);
    const double x = mid + half * std::tanh(u);
    const double ch = std::cosh(u);
    const double wt = half * std::numbers::pi / 2 * std::cosh(t) / (ch * ch);
    if (!(x > a && x < b) || pole_distance(poles, x) < 1e-9 * (1 + std::abs(x))) continue;
    auto m = tr.real(x, eps);
    const double f = m ? m->imag() / std::numbers::pi : 0.0;
    nodes.push_back(x);
    weights.push_back(wt * h);
    dens.push_back(f);
    fine += wt * h * f;
    if (k % 2 == 0) coarse += wt * 2 * h * f;
  }
}

}  // namespace

SliceRoots roots_at(const BiPoly& L, cdouble z0, const std::vector<cdouble>* warm) {
  const ComplexSlice s = eval_slice(L, z0);
  SliceRoots out;
  out.degree_drop = s.degree_drop;
  out.roots = aberth(s.coeffs, warm).roots;
  return out;
}

std::vector<double> find_poles(const BiPoly& L) { return real_roots(leading_coeff_u(L)); }

SupportInfo support_endpoints(const BiPoly& L) {
  SupportInfo s;
  if (L.du() >= 2) s.endpoints = real_roots(discriminant_u(L));
  s.poles = find_poles(L);
  return s;
}

cdouble physical_branch(const BiPoly& L, cdouble z, double scale) {
  if (z.imag() <= 0) throw InvalidArgument("physical_branch: Im z must be positive");
  return Tracker(L, scale).at(z.real(), z.imag());
}

std::optional<cdouble> physical_branch_real(const BiPoly& L, double x, double scale) {
  return Tracker(L, scale).real(x, 1e-10 * scale);
}

std::vector<Atom> atom_weights(const BiPoly& L, std::vector<std::string>* warnings) {
  const SupportInfo sup = support_endpoints(L);
  const Tracker tr(L, scale_of(sup));
  return atoms_with(tr, sup, warnings);
}

std::pair<double, double> default_range(const SupportInfo& s) {
  std::vector<double> pts = s.endpoints;
  pts.insert(pts.end(), s.poles.begin(), s.poles.end());
  if (pts.empty()) return {-5, 5};
  auto [lo, hi] = std::minmax_element(pts.begin(), pts.end());
  return {*lo - 0.5, *hi + 0.5};
}

DensityProfile density_grid(const BiPoly& L, int n_points) {
  const auto [lo, hi] = default_range(support_endpoints(L));
  return density_grid(L, lo, hi, n_points);
}

DensityProfile density_grid(const BiPoly& L, double zmin, double zmax, int n_points) {
  if (!(zmin < zmax)) throw InvalidArgument("density: need zmin < zmax");
  if (n_points < 2) throw InvalidArgument("density: need at least 2 grid points");
  DensityProfile p;
  p.support = support_endpoints(L);
  const double scale = scale_of(p.support) + std::max(std::abs(zmin), std::abs(zmax));
  const double eps = 1e-10 * scale;
  const Tracker tr(L, scale);

  std::vector<cdouble> prev;
  for (int i = 0; i < n_points; ++i) {
    const double x = zmin + (zmax - zmin) * i / (n_points - 1);
    if (pole_distance(p.support.poles, x) < kPoleSkip) continue;
    auto m = tr.real(x, eps);
    if (!m) continue;
    auto s = tr.curve().roots(cdouble(x, 0));
    // Greedy relabelling against the previous point.
    std::vector<cdouble> labelled;
    if (prev.size() == s.roots.size()) {
      std::vector<bool> used(s.roots.size(), false);
      labelled.resize(prev.size());
      for (std::size_t k = 0; k < prev.size(); ++k) {
        std::size_t best = 0;
        double bd = std::numeric_limits<double>::infinity();
        for (std::size_t q = 0; q < s.roots.size(); ++q)
          if (!used[q] && std::abs(s.roots[q] - prev[k]) < bd) bd = std::abs(s.roots[q] - prev[k]), best = q;
        used[best] = true;
        labelled[k] = s.roots[best];
      }
    } else {
      labelled = s.roots;
    }
    prev = labelled;
    p.grid.push_back(x);
    p.selected.push_back(static_cast<int>(nearest(labelled, *m).first));
    p.branches.push_back(std::move(labelled));
    p.density.push_back(m->imag() / std::numbers::pi);
  }
  for (std::size_t i = 1; i < p.grid.size(); ++i)
    p.grid_mass += (p.grid[i] - p.grid[i - 1]) * (p.density[i] + p.density[i - 1]) / 2;
  for (double f : p.density)
    if (f < -1e-9) {
      p.warnings.push_back("selected branch has negative imaginary part on the grid");
      break;
    }

  for (const auto& a : atoms_with(tr, p.support, &p.warnings))
    if (a.location >= zmin && a.location <= zmax) p.atoms.push_back(a);

  std::vector<double> cuts{zmin, zmax};
  for (double e : p.support.endpoints)
    if (e > zmin && e < zmax) cuts.push_back(e);
  for (double q : p.support.poles)
    if (q > zmin && q < zmax) cuts.push_back(q);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end(), [](double a, double b) { return std::abs(a - b) < 1e-12; }),
             cuts.end());
  double coarse_total = 0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    double coarse = 0, fine = 0;
    tanh_sinh(tr, cuts[i], cuts[i + 1], p.support.poles, eps, p.quad_nodes, p.quad_weights, p.quad_density, coarse,
              fine);
    p.continuous_mass += fine;
    coarse_total += coarse;
  }
  if (std::abs(coarse_total - p.continuous_mass) > 1e-6)
    p.warnings.push_back("quadrature refinement changed the continuous mass by " +
                         std::to_string(std::abs(coarse_total - p.continuous_mass)));
  p.total_mass = p.continuous_mass;
  for (const auto& a : p.atoms) p.total_mass += a.weight;
  return p;
}

double normalization_check(const DensityProfile& p) { return std::abs(p.total_mass - 1); }

std::string density_csv(const DensityProfile& p) {
  std::string out = "z,f\n";
  char buf[64];
  for (std::size_t i = 0; i < p.grid.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", p.grid[i], p.density[i]);
    out += buf;
  }
  return out;
}

std::string density_sidecar_json(const DensityProfile& p) {
  nlohmann::json j;
  j["atoms"] = nlohmann::json::array();
  for (const auto& a : p.atoms) j["atoms"].push_back({{"location", a.location}, {"weight", a.weight}});
  j["endpoints"] = p.support.endpoints;
  j["poles"] = p.support.poles;
  j["grid_mass"] = p.grid_mass;
  j["continuous_mass"] = p.continuous_mass;
  j["total_mass"] = p.total_mass;
  j["points"] = p.grid.size();
  j["warnings"] = p.warnings;
  return j.dump(2);
}

}  // namespace rmcalc
