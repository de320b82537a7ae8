#include "rmcalc/sampler.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <mutex>
#include <numeric>
#include <optional>
#include <thread>

#include "rmcalc/errors.hpp"
#include "rmcalc/rng.hpp"

namespace rmcalc {

namespace {

using Vec = std::vector<double>;

struct Ctx {
  Rng& rng;
  Variates var;
  double variate() { return var == Variates::Sign ? rng.sign() : rng.normal(); }
};

std::size_t checked_dim(double x, const char* op) {
  const double r = std::round(x);
  if (!(r >= 1) || r > 1e6) throw InvalidArgument(std::string(op) + ": ratio gives an empty or huge block");
  return static_cast<std::size_t>(r);
}
std::size_t dim_times(const Rational& c, std::size_t d, const char* op) {
  return checked_dim(to_double(c) * static_cast<double>(d), op);
}
std::size_t dim_over(const Rational& c, std::size_t d, const char* op) {
  return checked_dim(static_cast<double>(d) / to_double(c), op);
}

bool invariant_leaf(const Expr& e) { return e.kind == NodeKind::Wigner || e.kind == NodeKind::Wishart; }

bool nonnegative(const Vec& v) {
  double scale = 1;
  for (double x : v) scale = std::max(scale, std::abs(x));
  for (double x : v)
    if (x < -1e-12 * scale) return false;
  return true;
}

// Sizes d and the eigenvalues nearest `target` are appended or removed.
Vec pad_or_drop(Vec v, std::size_t d, double target) {
  if (v.size() < d) {
    v.resize(d, target);
  } else if (v.size() > d) {
    std::stable_sort(v.begin(), v.end(),
                     [&](double x, double y) { return std::abs(x - target) < std::abs(y - target); });
    v.erase(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(v.size() - d));
  }
  std::sort(v.begin(), v.end());
  return v;
}

DMatrix random_matrix(std::size_t r, std::size_t c, double scale, Ctx& ctx) {
  DMatrix g(r, c);
  for (auto& x : g.a) x = scale * ctx.variate();
  return g;
}

// x' diag(w) x; `lower` skips the zero upper part of a lower-triangular x.
DMatrix gram(const DMatrix& x, const Vec& w, bool lower = false) {
  const std::size_t k = x.cols;
  DMatrix out(k, k);
  for (std::size_t r = 0; r < x.rows; ++r) {
    if (w[r] == 0) continue;
    const double* row = &x.a[r * k];
    const std::size_t last = lower ? std::min(r + 1, k) : k;
    for (std::size_t i = 0; i < last; ++i) {
      const double wi = w[r] * row[i];
      if (wi == 0) continue;
      double* o = &out.a[i * k];
      for (std::size_t j = i; j < last; ++j) o[j] += wi * row[j];
    }
  }
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < i; ++j) out(i, j) = out(j, i);
  return out;
}

// Eigenvalues of B B' for the bidiagonal Laguerre model with n rows and dof degrees of freedom.
Vec laguerre_tridiagonal(std::size_t n, double dof, double scale, Rng& rng) {
  Vec a(n), b(n > 0 ? n - 1 : 0), d(n), e(n > 0 ? n - 1 : 0);
  for (std::size_t i = 0; i < n; ++i) a[i] = std::sqrt(rng.chi_square(dof - static_cast<double>(i)));
  for (std::size_t i = 0; i + 1 < n; ++i) b[i] = std::sqrt(rng.chi_square(static_cast<double>(n - 1 - i)));
  for (std::size_t i = 0; i < n; ++i) d[i] = scale * (a[i] * a[i] + (i > 0 ? b[i - 1] * b[i - 1] : 0));
  for (std::size_t i = 0; i + 1 < n; ++i) e[i] = scale * a[i] * b[i];
  return eigenvalues_tridiagonal(std::move(d), std::move(e));
}

// Lower-triangular Bartlett factor: L L' is Wishart with dof degrees of freedom.
DMatrix bartlett(std::size_t n, double dof, Rng& rng) {
  DMatrix l(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    l(i, i) = std::sqrt(rng.chi_square(dof - static_cast<double>(i)));
    for (std::size_t j = 0; j < i; ++j) l(i, j) = rng.normal();
  }
  return l;
}

Vec spectrum(const Expr& e, std::size_t d, Ctx& ctx);

DMatrix wigner_matrix(std::size_t d, Ctx& ctx) {
  DMatrix g = random_matrix(d, d, 1, ctx);
  const double s = 1 / std::sqrt(2.0 * static_cast<double>(d));
  DMatrix m(d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) m(i, j) = s * (g(i, j) + g(j, i));
  return m;
}

// Realized matrix of an invariant leaf, in a random basis.
DMatrix invariant_matrix(const Expr& e, std::size_t d, Ctx& ctx) {
  if (e.kind == NodeKind::Wigner) return wigner_matrix(d, ctx);
  const std::size_t l = dim_over(e.scalars.at(0), d, "wishart");
  const DMatrix g = random_matrix(l, d, 1 / std::sqrt(static_cast<double>(l)), ctx);
  return gram(g, Vec(l, 1.0));
}

Vec wigner_spectrum(std::size_t d, Ctx& ctx) {
  if (ctx.var == Variates::Sign) return eigenvalues_sym(wigner_matrix(d, ctx));
  const double s = 1 / std::sqrt(static_cast<double>(d));
  Vec diag(d), off(d > 0 ? d - 1 : 0);
  for (auto& x : diag) x = s * std::sqrt(2.0) * ctx.rng.normal();
  for (std::size_t i = 0; i + 1 < d; ++i) off[i] = s * std::sqrt(ctx.rng.chi_square(static_cast<double>(d - 1 - i)));
  return eigenvalues_tridiagonal(std::move(diag), std::move(off));
}

Vec wishart_spectrum(std::size_t d, const Rational& c, Ctx& ctx) {
  const std::size_t l = dim_over(c, d, "wishart");
  const double scale = 1 / static_cast<double>(l);
  if (ctx.var == Variates::Normal) {
    if (l >= d) return laguerre_tridiagonal(d, static_cast<double>(l), scale, ctx.rng);
    return pad_or_drop(laguerre_tridiagonal(l, static_cast<double>(d), scale, ctx.rng), d, 0);
  }
  const DMatrix g = random_matrix(d, l, std::sqrt(scale), ctx);
  if (l >= d) return eigenvalues_sym(gram(transpose(g), Vec(l, 1.0)));
  return pad_or_drop(eigenvalues_sym(gram(g, Vec(d, 1.0))), d, 0);
}

Vec atomic_spectrum(const AtomicSpec& t, std::size_t d) {
  validate(t);
  // Largest-remainder apportionment of d slots.
  const std::size_t k = t.masses.size();
  std::vector<std::size_t> count(k);
  Vec frac(k);
  std::size_t used = 0;
  for (std::size_t i = 0; i < k; ++i) {
    const double exact = to_double(t.masses[i].weight) * static_cast<double>(d);
    count[i] = static_cast<std::size_t>(std::floor(exact));
    frac[i] = exact - std::floor(exact);
    used += count[i];
  }
  std::vector<std::size_t> order(k);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return frac[x] > frac[y]; });
  for (std::size_t i = 0; used < d; ++i, ++used) ++count[order[i % k]];
  Vec v;
  for (std::size_t i = 0; i < k; ++i) v.insert(v.end(), count[i], to_double(t.masses[i].location));
  std::sort(v.begin(), v.end());
  return v;
}

Vec conjugated_eigs(const Vec& diag, DMatrix m) {
  Vec s(diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) s[i] = std::sqrt(std::max(diag[i], 0.0));
  for (std::size_t i = 0; i < m.rows; ++i)
    for (std::size_t j = 0; j < m.cols; ++j) m(i, j) *= s[i] * s[j];
  return eigenvalues_sym(std::move(m));
}

DMatrix haar_conjugate(const Vec& lam, Rng& rng) {
  const DMatrix q = haar_orthogonal(lam.size(), rng);
  return gram(transpose(q), lam);
}

Vec free_add_spectrum(const Expr& e, std::size_t d, Ctx& ctx) {
  const Expr* side[2] = {e.children.at(0).get(), e.children.at(1).get()};
  auto with_diag = [](const Vec& diag, DMatrix m) {
    for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) += diag[i];
    return eigenvalues_sym(std::move(m));
  };
  for (int pass = 0; pass < 2; ++pass)
    for (int k = 0; k < 2; ++k) {
      const bool ok = pass == 0 ? side[k]->kind == NodeKind::Wigner : invariant_leaf(*side[k]);
      if (!ok) continue;
      const Vec other = spectrum(*side[1 - k], d, ctx);
      return with_diag(other, invariant_matrix(*side[k], d, ctx));
    }
  const Vec a = spectrum(*side[0], d, ctx), b = spectrum(*side[1], d, ctx);
  return with_diag(a, haar_conjugate(b, ctx.rng));
}

Vec free_mul_spectrum(const Expr& e, std::size_t d, Ctx& ctx) {
  const Expr* side[2] = {e.children.at(0).get(), e.children.at(1).get()};
  std::optional<Vec> spec[2];
  auto get = [&](int k) -> const Vec& {
    if (!spec[k]) spec[k] = spectrum(*side[k], d, ctx);
    return *spec[k];
  };
  for (int pass = 0; pass < 2; ++pass)
    for (int k = 0; k < 2; ++k) {
      const bool ok = pass == 0 ? side[k]->kind == NodeKind::Wigner : invariant_leaf(*side[k]);
      if (!ok || spec[k]) continue;
      const Vec& other = get(1 - k);
      if (nonnegative(other)) return conjugated_eigs(other, invariant_matrix(*side[k], d, ctx));
    }
  for (int k = 0; k < 2; ++k)
    if (nonnegative(get(k))) return conjugated_eigs(get(k), haar_conjugate(get(1 - k), ctx.rng));
  throw ComputationError("freemul: neither factor is non-negative in this realization");
}

Vec mul_wishart_spectrum(const Expr& e, std::size_t d, Ctx& ctx) {
  const Vec a = spectrum(*e.children.at(0), d, ctx);
  const std::size_t l = dim_over(e.scalars.at(0), d, "mulwishart");
  const double scale = 1 / static_cast<double>(l);
  Vec out;
  if (ctx.var == Variates::Normal && l >= d) {
    // eig(A W) = eig(L' A L) for W = L L'.
    out = eigenvalues_sym(gram(bartlett(d, static_cast<double>(l), ctx.rng), a, true));
  } else {
    const DMatrix g = random_matrix(d, l, 1, ctx);
    out = pad_or_drop(eigenvalues_sym(gram(g, a)), d, 0);
  }
  for (double& x : out) x *= scale;
  return out;
}

Vec add_wishart_spectrum(const Expr& e, std::size_t d, Ctx& ctx) {
  const Vec a = spectrum(*e.children.at(0), d, ctx);
  const std::size_t l = dim_times(e.scalars.at(0), d, "addwishart");
  const Vec t = atomic_spectrum(e.atoms, l);
  const DMatrix g = random_matrix(l, d, 1 / std::sqrt(static_cast<double>(d)), ctx);
  DMatrix m = gram(g, t);
  for (std::size_t i = 0; i < d; ++i) m(i, i) += a[i];
  return eigenvalues_sym(std::move(m));
}

Vec info_noise_spectrum(const Expr& e, std::size_t d, Ctx& ctx) {
  if (e.scalars.at(0) > 1) throw InvalidArgument("infonoise: sampling needs c <= 1");
  const Vec a = spectrum(*e.children.at(0), d, ctx);
  if (!nonnegative(a)) throw ComputationError("infonoise: signal spectrum has negative eigenvalues");
  const std::size_t l = dim_over(e.scalars.at(0), d, "infonoise");
  const double s = std::sqrt(to_double(e.scalars.at(1)) / static_cast<double>(l));
  // Rows of X' so that gram gives X X'.
  DMatrix xt = random_matrix(l, d, s, ctx);
  for (std::size_t i = 0; i < d; ++i) xt(i, i) += std::sqrt(std::max(a[i], 0.0));
  return eigenvalues_sym(gram(xt, Vec(l, 1.0)));
}

Vec compress_spectrum(const Expr& e, std::size_t d, Ctx& ctx) {
  if (e.scalars.at(0) > 1) throw InvalidArgument("compress: sampling needs c <= 1");
  const std::size_t n = dim_over(e.scalars.at(0), d, "compress");
  const Vec a = spectrum(*e.children.at(0), n, ctx);
  // Q = G R^{-1} with R' R = G' G is Haar; Q' A Q = R'^{-1} (G' A G) R^{-1}.
  DMatrix g(n, d);
  for (auto& x : g.a) x = ctx.rng.normal();
  const DMatrix r = cholesky(gram(g, Vec(n, 1.0)));
  DMatrix m = gram(g, a);
  auto forward = [&](DMatrix& x) {
    for (std::size_t i = 0; i < d; ++i) {
      double* row = &x.a[i * d];
      for (std::size_t k = 0; k < i; ++k) {
        const double f = r(i, k);
        if (f == 0) continue;
        const double* rk = &x.a[k * d];
        for (std::size_t j = 0; j < d; ++j) row[j] -= f * rk[j];
      }
      const double inv = 1 / r(i, i);
      for (std::size_t j = 0; j < d; ++j) row[j] *= inv;
    }
  };
  forward(m);
  m = transpose(m);
  forward(m);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < i; ++j) m(i, j) = m(j, i) = (m(i, j) + m(j, i)) / 2;
  return eigenvalues_sym(std::move(m));
}

Vec wishart_cov_spectrum(const Expr& e, std::size_t d, Ctx& ctx) {
  const Vec a = spectrum(*e.children.at(0), d, ctx);
  const std::size_t n = dim_over(e.scalars.at(0), d, "wishartcov");
  const Vec b = spectrum(*e.children.at(1), n, ctx);
  const DMatrix g = random_matrix(d, n, 1 / std::sqrt(static_cast<double>(n)), ctx);
  if (nonnegative(a)) {
    DMatrix x(n, d);
    for (std::size_t i = 0; i < d; ++i) {
      const double s = std::sqrt(std::max(a[i], 0.0));
      for (std::size_t k = 0; k < n; ++k) x(k, i) = g(i, k) * s;
    }
    return eigenvalues_sym(gram(x, b));
  }
  if (nonnegative(b)) {
    DMatrix x(d, n);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t k = 0; k < n; ++k) x(i, k) = g(i, k) * std::sqrt(std::max(b[k], 0.0));
    return pad_or_drop(eigenvalues_sym(gram(x, a)), d, 0);
  }
  throw ComputationError("wishartcov: neither covariance factor is non-negative in this realization");
}

Vec map_each(Vec v, double (*f)(double, const std::vector<double>&), const std::vector<double>& prm) {
  for (double& x : v) x = f(x, prm);
  std::sort(v.begin(), v.end());
  return v;
}

Vec spectrum(const Expr& e, std::size_t d, Ctx& ctx) {
  std::vector<double> q;
  for (const auto& s : e.scalars) q.push_back(to_double(s));
  switch (e.kind) {
    case NodeKind::Identity: return Vec(d, 1.0);
    case NodeKind::Atomic: return atomic_spectrum(e.atoms, d);
    case NodeKind::Wigner: return wigner_spectrum(d, ctx);
    case NodeKind::Wishart: return wishart_spectrum(d, e.scalars.at(0), ctx);
    case NodeKind::Mobius:
      return map_each(spectrum(*e.children.at(0), d, ctx), [](double x, const std::vector<double>& p) {
        const double den = p[2] * x + p[3];
        if (den == 0) throw ComputationError("mobius: pole hit by a sampled eigenvalue");
        return (p[0] * x + p[1]) / den;
      }, q);
    case NodeKind::Inv:
      return map_each(spectrum(*e.children.at(0), d, ctx), [](double x, const std::vector<double>&) {
        if (x == 0) throw ComputationError("inv: singular sample");
        return 1 / x;
      }, q);
    case NodeKind::Scale:
      return map_each(spectrum(*e.children.at(0), d, ctx), [](double x, const std::vector<double>& p) { return p[0] * x; }, q);
    case NodeKind::Shift:
      return map_each(spectrum(*e.children.at(0), d, ctx), [](double x, const std::vector<double>& p) { return x + p[0]; }, q);
    case NodeKind::Square:
      return map_each(spectrum(*e.children.at(0), d, ctx), [](double x, const std::vector<double>&) { return x * x; }, q);
    case NodeKind::BlockDiag: {
      const double c = q.at(0);
      if (!(c > 0 && c < 1)) throw InvalidArgument("blockdiag: c must lie in (0, 1)");
      const std::size_t na = dim_times(e.scalars[0], d, "blockdiag");
      if (na >= d) throw InvalidArgument("blockdiag: dimension too small to split");
      Vec a = spectrum(*e.children.at(0), na, ctx);
      const Vec b = spectrum(*e.children.at(1), d - na, ctx);
      a.insert(a.end(), b.begin(), b.end());
      std::sort(a.begin(), a.end());
      return a;
    }
    case NodeKind::Corner: {
      const std::size_t n = dim_times(e.scalars.at(0), d, "corner");
      if (n < d) throw InvalidArgument("corner: sampling needs c >= 1");
      return pad_or_drop(spectrum(*e.children.at(0), n, ctx), d, q.at(1));
    }
    case NodeKind::TransposeSwap: {
      const std::size_t n = dim_times(e.scalars.at(0), d, "transpose");
      return pad_or_drop(spectrum(*e.children.at(0), n, ctx), d, 0);
    }
    case NodeKind::AddAtomicWishart: return add_wishart_spectrum(e, d, ctx);
    case NodeKind::MulWishart: return mul_wishart_spectrum(e, d, ctx);
    case NodeKind::InfoPlusNoise: return info_noise_spectrum(e, d, ctx);
    case NodeKind::FreeAdd: return free_add_spectrum(e, d, ctx);
    case NodeKind::FreeMul: return free_mul_spectrum(e, d, ctx);
    case NodeKind::Compress: return compress_spectrum(e, d, ctx);
    case NodeKind::WishartCov: return wishart_cov_spectrum(e, d, ctx);
  }
  throw InvalidArgument("sampler: unknown node kind");
}

}  // namespace

EnsembleSample sample_ensemble(const ExprPtr& expr, std::size_t n, std::uint64_t seed, std::uint64_t trial,
                               const SamplerOptions& opts) {
  if (!expr) throw InvalidArgument("sample_ensemble: null expression");
  if (n == 0) throw InvalidArgument("sample_ensemble: dimension must be positive");
  Rng rng(seed, trial);
  Ctx ctx{rng, opts.variates};
  EnsembleSample s{n, spectrum(*expr, n, ctx), seed, trial, expr};
  if (s.eigenvalues.size() != n) throw ComputationError("sample_ensemble: dimension mismatch in realization");
  for (double x : s.eigenvalues)
    if (!std::isfinite(x)) throw ComputationError("sample_ensemble: non-finite eigenvalue");
  return s;
}

std::vector<std::vector<double>> sample_trials(const ExprPtr& expr, std::size_t n, std::uint64_t seed,
                                               std::size_t trials, const SamplerOptions& opts) {
  std::vector<Vec> out(trials);
  unsigned workers = opts.threads ? opts.threads : std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, std::max<std::size_t>(trials, 1)));
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto work = [&] {
    for (std::size_t t; (t = next++) < trials;) {
      try {
        out[t] = sample_ensemble(expr, n, seed, t, opts).eigenvalues;
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        next = trials;
      }
    }
  };
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }
  if (error) std::rethrow_exception(error);
  return out;
}

EmpiricalHistogram make_histogram(const std::vector<std::vector<double>>& spectra, double lo, double hi, int bins) {
  if (!(lo < hi) || bins < 1) throw InvalidArgument("histogram: need lo < hi and at least one bin");
  EmpiricalHistogram h;
  h.trials = spectra.size();
  h.edges.resize(static_cast<std::size_t>(bins) + 1);
  const double width = (hi - lo) / bins;
  for (int b = 0; b <= bins; ++b) h.edges[static_cast<std::size_t>(b)] = lo + width * b;
  h.edges.back() = hi;
  std::vector<double> counts(static_cast<std::size_t>(bins), 0);
  std::vector<std::pair<double, double>> runs;  // location, count
  double below = 0, above = 0;
  for (const auto& raw : spectra) {
    Vec v = raw;
    std::sort(v.begin(), v.end());
    h.samples += v.size();
    for (std::size_t i = 0; i < v.size();) {
      std::size_t j = i + 1;
      while (j < v.size() && v[j] - v[j - 1] <= kAtomTolerance) ++j;
      if (j - i >= 2) {
        runs.emplace_back(std::accumulate(v.begin() + static_cast<std::ptrdiff_t>(i),
                                          v.begin() + static_cast<std::ptrdiff_t>(j), 0.0) /
                              static_cast<double>(j - i),
                          static_cast<double>(j - i));
      } else if (v[i] < lo) {
        below += 1;
      } else if (v[i] > hi) {
        above += 1;
      } else {
        const auto b = std::min(static_cast<std::size_t>((v[i] - lo) / width), counts.size() - 1);
        counts[b] += 1;
      }
      i = j;
    }
  }
  if (h.samples == 0) return h;
  const double total = static_cast<double>(h.samples);
  h.below = below / total;
  h.above = above / total;
  h.density.resize(counts.size());
  for (std::size_t b = 0; b < counts.size(); ++b) h.density[b] = counts[b] / (total * width);
  std::sort(runs.begin(), runs.end());
  for (std::size_t i = 0; i < runs.size();) {
    double wsum = 0, xsum = 0;
    std::size_t j = i;
    while (j < runs.size() && runs[j].first - runs[i].first <= 1e-6 * std::max(1.0, std::abs(runs[i].first))) {
      wsum += runs[j].second;
      xsum += runs[j].first * runs[j].second;
      ++j;
    }
    h.atoms.push_back({xsum / wsum, wsum / total});
    i = j;
  }
  return h;
}

namespace {

// Continuous CDF of a profile by the trapezoid rule on its grid.
struct ProfileCdf {
  const DensityProfile& p;
  std::vector<double> cum;
  explicit ProfileCdf(const DensityProfile& prof) : p(prof), cum(prof.grid.size(), 0) {
    for (std::size_t i = 1; i < p.grid.size(); ++i)
      cum[i] = cum[i - 1] + (p.grid[i] - p.grid[i - 1]) * (std::max(p.density[i], 0.0) + std::max(p.density[i - 1], 0.0)) / 2;
  }
  double operator()(double x) const {
    if (p.grid.empty() || x <= p.grid.front()) return 0;
    if (x >= p.grid.back()) return cum.back();
    const auto i = static_cast<std::size_t>(std::upper_bound(p.grid.begin(), p.grid.end(), x) - p.grid.begin()) - 1;
    const double h = p.grid[i + 1] - p.grid[i], t = (x - p.grid[i]) / h;
    const double f0 = std::max(p.density[i], 0.0), f1 = std::max(p.density[i + 1], 0.0);
    const double fx = f0 + t * (f1 - f0);
    return cum[i] + (x - p.grid[i]) * (f0 + fx) / 2;
  }
};

bool same_location(double a, double b) { return std::abs(a - b) <= 1e-6 * std::max(1.0, std::abs(a)); }

}  // namespace

Comparison compare(const EmpiricalHistogram& hist, const DensityProfile& profile) {
  if (hist.samples == 0 || hist.density.empty()) throw InvalidArgument("compare: empty histogram");
  const ProfileCdf cdf(profile);
  const auto& e = hist.edges;
  const std::size_t nb = hist.density.size();
  const double lo = e.front(), hi = e.back();
  auto bin_of = [&](double x) {
    return std::min(static_cast<std::size_t>(std::upper_bound(e.begin(), e.end(), x) - e.begin()) - 1, nb - 1);
  };

  Vec hm(nb), pm(nb);
  for (std::size_t b = 0; b < nb; ++b) {
    hm[b] = hist.density[b] * (e[b + 1] - e[b]);
    pm[b] = cdf(e[b + 1]) - cdf(e[b]);
  }
  double h_below = hist.below, h_above = hist.above;
  double p_below = cdf(lo), p_above = profile.grid.empty() ? 0 : cdf(profile.grid.back()) - cdf(hi);
  double l1 = 0;
  std::vector<bool> used(profile.atoms.size(), false);
  auto place = [&](double x, double w, Vec& mass, double& below, double& above) {
    if (x < lo)
      below += w;
    else if (x > hi)
      above += w;
    else
      mass[bin_of(x)] += w;
  };
  for (const auto& a : hist.atoms) {
    bool matched = false;
    for (std::size_t k = 0; k < profile.atoms.size() && !matched; ++k)
      if (!used[k] && same_location(a.location, profile.atoms[k].location)) {
        used[k] = matched = true;
        l1 += std::abs(a.weight - profile.atoms[k].weight);
      }
    if (!matched) place(a.location, a.weight, hm, h_below, h_above);
  }
  for (std::size_t k = 0; k < profile.atoms.size(); ++k)
    if (!used[k]) place(profile.atoms[k].location, profile.atoms[k].weight, pm, p_below, p_above);
  for (std::size_t b = 0; b < nb; ++b) l1 += std::abs(hm[b] - pm[b]);
  l1 += std::abs(h_below - p_below) + std::abs(h_above - p_above);

  // CDFs with atoms as jumps, compared at edges and on both sides of every atom.
  auto hist_cdf = [&](double x, bool inclusive) {
    double f = hist.below;
    for (std::size_t b = 0; b < nb; ++b) {
      if (x >= e[b + 1]) {
        f += hist.density[b] * (e[b + 1] - e[b]);
      } else {
        if (x > e[b]) f += hist.density[b] * (x - e[b]);
        break;
      }
    }
    if (x > hi) f += hist.above;
    for (const auto& a : hist.atoms)
      if (a.location < x || (inclusive && a.location == x)) f += a.weight;
    return f;
  };
  auto prof_cdf = [&](double x, bool inclusive) {
    double f = cdf(x);
    for (const auto& a : profile.atoms)
      if (a.location < x || (inclusive && a.location == x)) f += a.weight;
    return f;
  };
  double ks = 0;
  std::vector<double> probes(e.begin(), e.end());
  for (const auto& a : hist.atoms) probes.push_back(a.location);
  for (const auto& a : profile.atoms) probes.push_back(a.location);
  for (double x : probes)
    for (bool inc : {false, true}) ks = std::max(ks, std::abs(hist_cdf(x, inc) - prof_cdf(x, inc)));
  return {l1, ks};
}

VerifyReport verify(const ExprPtr& expr, const VerifyOptions& opts) {
  if (!expr) throw InvalidArgument("verify: null expression");
  if (opts.trials == 0) throw InvalidArgument("verify: need at least one trial");
  const auto start = std::chrono::steady_clock::now();
  VerifyReport r;
  r.profile = density_grid(evaluate(*expr), opts.points);
  if (r.profile.grid.size() < 2) throw ComputationError("verify: density profile has no usable grid");
  const auto spectra = sample_trials(expr, opts.dim, opts.seed, opts.trials, opts.sampler);
  r.histogram = make_histogram(spectra, r.profile.grid.front(), r.profile.grid.back(), opts.bins);
  r.distance = compare(r.histogram, r.profile);
  r.pass = r.distance.l1 <= opts.threshold;
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

std::string histogram_csv(const EmpiricalHistogram& h) {
  std::string out = "kind,lo,hi,value\n";
  char buf[128];
  for (std::size_t b = 0; b < h.density.size(); ++b) {
    std::snprintf(buf, sizeof buf, "bin,%.17g,%.17g,%.17g\n", h.edges[b], h.edges[b + 1], h.density[b]);
    out += buf;
  }
  for (const auto& a : h.atoms) {
    std::snprintf(buf, sizeof buf, "atom,%.17g,%.17g,%.17g\n", a.location, a.location, a.weight);
    out += buf;
  }
  return out;
}

}  // namespace rmcalc
