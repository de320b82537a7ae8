#pragma once

#include <vector>

#include "rmcalc/algops.hpp"
#include "rmcalc/rational.hpp"

namespace rmcalc {

using RationalMatrix = Matrix<Rational>;

// Basis of the right nullspace, one vector per free column of the reduced
// row echelon form. Each vector has a 1 in its free column.
std::vector<std::vector<Rational>> nullspace(RationalMatrix a);

}  // namespace rmcalc
