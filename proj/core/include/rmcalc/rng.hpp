#pragma once

#include <cstdint>

namespace rmcalc {

// Counter-based generator: output i of stream (seed, key) is a mix of
// (seed, key, i), so every trial owns an independent reproducible stream.
class Rng {
 public:
  Rng(std::uint64_t seed, std::uint64_t key);

  std::uint64_t next();
  double uniform();  // in (0, 1)
  double normal();
  double sign();     // +1 or -1 with equal probability
  double gamma(double shape);  // unit scale
  double chi_square(double dof);

 private:
  std::uint64_t base_;
  std::uint64_t counter_ = 0;
  double spare_ = 0;
  bool has_spare_ = false;
};

std::uint64_t mix64(std::uint64_t x);

}  // namespace rmcalc
