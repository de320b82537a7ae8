#include "rmcalc/rng.hpp"

#include <cmath>
#include <numbers>

namespace rmcalc {

std::uint64_t mix64(std::uint64_t x) {
  x ^= x >> 30;
  x *= 0xbf58476d1ce4e5b9ULL;
  x ^= x >> 27;
  x *= 0x94d049bb133111ebULL;
  x ^= x >> 31;
  return x;
}

Rng::Rng(std::uint64_t seed, std::uint64_t key) : base_(mix64(seed + 0x9e3779b97f4a7c15ULL) ^ mix64(~key)) {}

std::uint64_t Rng::next() { return mix64(base_ + 0x9e3779b97f4a7c15ULL * ++counter_); }

double Rng::uniform() { return (static_cast<double>(next() >> 11) + 0.5) * 0x1.0p-53; }

double Rng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const double r = std::sqrt(-2 * std::log(uniform()));
  const double t = 2 * std::numbers::pi * uniform();
  spare_ = r * std::sin(t);
  has_spare_ = true;
  return r * std::cos(t);
}

double Rng::sign() { return (next() >> 63) ? 1.0 : -1.0; }

double Rng::gamma(double shape) {
  // Marsaglia-Tsang squeeze; shapes below 1 are boosted by U^(1/shape).
  if (shape < 1) return gamma(shape + 1) * std::pow(uniform(), 1 / shape);
  const double d = shape - 1.0 / 3, c = 1 / std::sqrt(9 * d);
  for (;;) {
    double x, v;
    do {
      x = normal();
      v = 1 + c * x;
    } while (v <= 0);
    v = v * v * v;
    const double u = uniform();
    if (u < 1 - 0.0331 * x * x * x * x) return d * v;
    if (std::log(u) < 0.5 * x * x + d * (1 - v + std::log(v))) return d * v;
  }
}

double Rng::chi_square(double dof) { return dof > 0 ? 2 * gamma(dof / 2) : 0; }

}  // namespace rmcalc
