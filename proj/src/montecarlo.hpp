#ifndef PPMBEAM_MONTECARLO_HPP
#define PPMBEAM_MONTECARLO_HPP

#include <cstdint>
#include <variant>

#include "abep.hpp"
#include "pointing.hpp"
#include "rng.hpp"

namespace ppmbeam {

// Brute-force receiver simulation, the independent oracle for every
// analytic ABEP value. Per symbol: draw the collected fraction t, load the
// signal slot with xi = t * Eb/N0 * log2(Q), draw the signal-slot statistic
// as Gamma(M + J, 1) with J ~ Poisson(xi) (the normalized noncentral
// chi-square with 2M degrees of freedom) and each of the Q-1 noise slots as
// Gamma(M, 1); the symbol errs when a noise slot beats the signal slot, or
// a max tie is lost by a uniform pick among the tied slots.
//
// Work is split into n_chunks chunks; chunk c draws from the stream keyed
// (seed, c), so a fixed (spec, partition) is bit-reproducible regardless of
// thread count or scheduling.
struct SimSpec {
  PpmConfig config;
  EnergyPoint point;
  std::variant<PointingGeometry, FadeDistribution> source;
  long long n_symbols = 0;
  std::uint64_t seed = 0;
  int n_chunks = 64;
  int n_threads = 0;  // <= 0: hardware concurrency

  void validate() const;
};

struct SimResult {
  double abep_estimate = 0.0;  // prefactor * symbol_errors / n_symbols
  double std_error = 0.0;      // prefactor * sqrt(p(1-p)/n), p the symbol-error fraction
  long long n_symbols = 0;
  long long symbol_errors = 0;
};

// Draw one collected fraction from the geometry: Gaussian (x, y) offsets,
// r = hypot(x, y), then the aperture-averaged Gaussian-beam fraction.
double sample_collected_fraction(const PointingGeometry& g, RandomStream& rng);
double sample_collected_fraction(const PointingGeometry& g, const EquivalentBeam& beam,
                                 RandomStream& rng);

SimResult simulate_abep(const SimSpec& spec);

}  // namespace ppmbeam

#endif
