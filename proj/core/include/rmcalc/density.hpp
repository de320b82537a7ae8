#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "rmcalc/bipoly.hpp"
#include "rmcalc/roots.hpp"

namespace rmcalc {

struct Atom {
  double location = 0;
  double weight = 0;
};

struct SupportInfo {
  std::vector<double> endpoints;  // real roots of the discriminant, candidates only
  std::vector<double> poles;      // real roots of l_Du
};

struct SliceRoots {
  std::vector<cdouble> roots;
  bool degree_drop = false;
};

struct DensityProfile {
  std::vector<double> grid;
  std::vector<std::vector<cdouble>> branches;  // branches[i][k]: branch k at grid[i]
  std::vector<int> selected;                   // index into branches[i]
  std::vector<double> density;
  std::vector<Atom> atoms;
  SupportInfo support;
  double grid_mass = 0;        // trapezoid over the grid
  double continuous_mass = 0;  // breakpoint-aware quadrature over [grid.front(), grid.back()]
  double total_mass = 0;       // continuous_mass + atoms inside the grid range
  // Quadrature nodes behind continuous_mass, reused for moments.
  std::vector<double> quad_nodes, quad_weights, quad_density;
  std::vector<std::string> warnings;
};

// Roots in m of L(m, z0). Throws ComputationError on an all-zero slice.
SliceRoots roots_at(const BiPoly& L, cdouble z0, const std::vector<cdouble>* warm = nullptr);

std::vector<double> find_poles(const BiPoly& L);
SupportInfo support_endpoints(const BiPoly& L);

// The branch that is a Stieltjes transform: analytic in the upper half plane
// with m ~ -1/z at infinity, continued down from far above Re z.
cdouble physical_branch(const BiPoly& L, cdouble z, double scale);

// Physical branch on the real axis (limit from above).
std::optional<cdouble> physical_branch_real(const BiPoly& L, double x, double scale);

std::vector<Atom> atom_weights(const BiPoly& L, std::vector<std::string>* warnings = nullptr);

DensityProfile density_grid(const BiPoly& L, double zmin, double zmax, int n_points);
// Default range: [min endpoint - 0.5, max endpoint + 0.5], widened to cover poles.
DensityProfile density_grid(const BiPoly& L, int n_points = 1000);
std::pair<double, double> default_range(const SupportInfo& s);

double normalization_check(const DensityProfile& p);

std::string density_csv(const DensityProfile& p);
std::string density_sidecar_json(const DensityProfile& p);

}  // namespace rmcalc
