#pragma once

#include <complex>
#include <vector>

#include "rmcalc/poly.hpp"
#include "rmcalc/rational.hpp"

namespace rmcalc {

using cdouble = std::complex<double>;

struct AberthResult {
  std::vector<cdouble> roots;
  bool converged = false;
  int iterations = 0;
};

// All roots of sum coeffs[k] x^k. The leading coefficient must be nonzero.
// `init`, when it has the right size, replaces the circle initialization.
AberthResult aberth(const std::vector<cdouble>& coeffs, const std::vector<cdouble>* init = nullptr,
                    double tol = 1e-12, int max_iter = 500);

cdouble horner(const std::vector<cdouble>& coeffs, cdouble x);

// Isolating interval (lo, hi] of one real root; lo == hi marks an exact root.
struct RootInterval {
  Rational lo, hi;
};

std::vector<QPoly> sturm_sequence(const QPoly& p);
int sign_variations(const std::vector<QPoly>& seq, const Rational& x);

// Distinct real roots of p, in increasing order.
std::vector<RootInterval> isolate_real_roots(const QPoly& p);
void refine_root(const QPoly& squarefree, RootInterval& iv, const Rational& width);
std::vector<double> real_roots(const QPoly& p, double rel_tol = 1e-15);
std::vector<Rational> rational_roots(const QPoly& p);

}  // namespace rmcalc
