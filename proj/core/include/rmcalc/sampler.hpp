#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rmcalc/density.hpp"
#include "rmcalc/eigen.hpp"
#include "rmcalc/expr.hpp"

namespace rmcalc {

enum class Variates { Normal, Sign };

struct SamplerOptions {
  Variates variates = Variates::Normal;
  unsigned threads = 0;  // 0: hardware concurrency
};

struct EnsembleSample {
  std::size_t dimension = 0;
  std::vector<double> eigenvalues;  // ascending
  std::uint64_t seed = 0, trial = 0;
  ExprPtr expr;
};

// One realization of the ensemble; the stream is a function of (seed, trial) only.
EnsembleSample sample_ensemble(const ExprPtr& expr, std::size_t n, std::uint64_t seed, std::uint64_t trial = 0,
                               const SamplerOptions& opts = {});

// Spectra of trials 0 .. trials-1, computed in parallel, ordered by trial.
std::vector<std::vector<double>> sample_trials(const ExprPtr& expr, std::size_t n, std::uint64_t seed,
                                               std::size_t trials, const SamplerOptions& opts = {});

struct EmpiricalHistogram {
  std::vector<double> edges;    // bins + 1
  std::vector<double> density;  // integrates to the non-atomic fraction inside the range
  std::vector<Atom> atoms;      // runs of >= 2 equal eigenvalues within one trial
  double below = 0, above = 0;  // fractions outside [edges.front(), edges.back()]
  std::size_t trials = 0, samples = 0;
};

inline constexpr double kAtomTolerance = 1e-8;

EmpiricalHistogram make_histogram(const std::vector<std::vector<double>>& spectra, double lo, double hi, int bins);

struct Comparison {
  double l1 = 0, ks = 0;
};

// L1 between bin masses plus matched atom weights; KS over bin edges and atom jumps.
Comparison compare(const EmpiricalHistogram& hist, const DensityProfile& profile);

struct VerifyOptions {
  std::size_t dim = 200;
  std::size_t trials = 2000;
  std::uint64_t seed = 1;
  int bins = 100;
  int points = 1000;
  double threshold = 0.1;
  SamplerOptions sampler;
};

struct VerifyReport {
  EmpiricalHistogram histogram;
  DensityProfile profile;
  Comparison distance;
  bool pass = false;
  double seconds = 0;
};

VerifyReport verify(const ExprPtr& expr, const VerifyOptions& opts = {});

std::string histogram_csv(const EmpiricalHistogram& h);

}  // namespace rmcalc
