#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "rmcalc/bipoly.hpp"
#include "rmcalc/density.hpp"
#include "rmcalc/encodings.hpp"

namespace rmcalc {

struct MomentSeries {
  std::vector<Rational> coeffs;
  Kind kind = Kind::muz;  // muz: coeffs[j] = M_j; rg: coeffs[j] = K_{j+1}
};

// First n_terms coefficients of the power series u(v) with L(u(v), v) = 0 and
// u(0) = seed. A multiple seed is lifted through u = seed + v w; when several
// lifts survive, `accept` picks among them.
std::vector<Rational> series_root(const BiPoly& L, const Rational& seed, int n_terms,
                                  const std::function<bool(const std::vector<Rational>&)>& accept = {});

// M_0..M_N. L is in mz or muz encoding.
MomentSeries moment_series(const BiPoly& L, int N, Kind kind = Kind::mz);

// K_1..K_{N+1}. L is in mz or rg encoding.
MomentSeries cumulant_series(const BiPoly& L, int N, Kind kind = Kind::mz);

// sum_{i=0}^{order} P_i(n) a(n+i) = 0 for every n covered by the data.
struct Recurrence {
  int order = 0;
  int degree = 0;
  std::vector<QPoly> coeffs;  // P_0 .. P_order, polynomials in n
};

std::string to_string(const Recurrence& r);
bool recurrence_holds(const Recurrence& r, const std::vector<Rational>& seq);

// Smallest (order, degree) recurrence fitted exactly on all but the last 8
// terms and verified on those 8.
std::optional<Recurrence> fit_recurrence(const std::vector<Rational>& seq, int max_order, int max_degree);

std::vector<double> moments_from_density(const DensityProfile& profile, int k);

// Every principal minor of the size x size Hankel matrix m_{i+j} is >= 0.
bool hankel_psd(const std::vector<Rational>& moments, int size);

}  // namespace rmcalc
