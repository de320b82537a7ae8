#pragma once

#include <utility>
#include <vector>

#include "rmcalc/bipoly.hpp"

namespace rmcalc {

// Every law takes and returns Lmz polynomials labelled (m, z).

struct MobiusParams {
  Rational p = 1, q = 0, r = 0, s = 1;
};

struct AtomicSpec {
  struct Mass {
    Rational weight, location;
  };
  std::vector<Mass> masses;
};

// Checks weights in (0, 1] summing to 1 and distinct locations.
void validate(const AtomicSpec& t);

BiPoly atomic(const AtomicSpec& t);
BiPoly identity_law();
BiPoly wigner();
BiPoly wishart(const Rational& c);  // Marchenko-Pastur with ratio c

BiPoly mobius(const BiPoly& L, const MobiusParams& mp);
BiPoly inverse_law(const BiPoly& L);
BiPoly scale_law(const BiPoly& L, const Rational& alpha);
BiPoly shift_law(const BiPoly& L, const Rational& alpha);

BiPoly transpose_swap(const BiPoly& L, const Rational& c);
BiPoly square(const BiPoly& L);
BiPoly block_diag(const BiPoly& la, const BiPoly& lb, const Rational& c);
BiPoly corner(const BiPoly& L, const Rational& c, const Rational& alpha);
BiPoly add_atomic_wishart(const BiPoly& L, const Rational& c, const AtomicSpec& t);
BiPoly multiply_wishart(const BiPoly& L, const Rational& c);
BiPoly info_plus_noise(const BiPoly& L, const Rational& c, const Rational& s);
BiPoly free_add(const BiPoly& la, const BiPoly& lb);
BiPoly free_mul(const BiPoly& la, const BiPoly& lb);
BiPoly compress(const BiPoly& L, const Rational& c);
BiPoly wishart_covariance(const BiPoly& la, const BiPoly& lb, const Rational& c);

// The factor of L satisfied by the moment generating series of the
// distribution. L is returned unchanged when no moments exist or no proper
// factor annihilates the series.
BiPoly isolate_physical_factor(const BiPoly& L);

}  // namespace rmcalc
