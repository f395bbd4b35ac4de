#ifndef PPMBEAM_ABEP_HPP
#define PPMBEAM_ABEP_HPP

#include <cmath>
#include <cstdint>
#include <memory>
#include <variant>
#include <vector>

namespace ppmbeam {

// PPM signalling parameters: Q slots per symbol (power of two, so a symbol
// carries log2(Q) bits) and M optical noise modes reaching the decision
// statistic (the per-slot statistic has 2M chi-square degrees of freedom).
struct PpmConfig {
  int order = 2;        // Q
  int noise_modes = 1;  // M

  void validate() const;
  double bits_per_symbol() const { return std::log2(static_cast<double>(order)); }
  // Symbol-error to bit-error mapping for orthogonal signalling.
  double bit_error_prefactor() const {
    return order / (2.0 * (static_cast<double>(order) - 1.0));
  }
};

// Optical pre-amplifier link budget: gain G, spontaneous emission factor
// n_sp and photon energy h*f give the ASE noise density N0 = n_sp*h*f*(G-1).
struct AmplifierModel {
  double gain = 0.0;           // G, linear, > 1
  double n_sp = 1.0;           // >= 1
  double photon_energy = 0.0;  // h*f [J]

  void validate() const;
  double noise_density() const { return n_sp * photon_energy * (gain - 1.0); }
};

// Received energy per bit over noise density, linear. dB conversion lives
// here; all internal math is linear.
struct EnergyPoint {
  double ebn0 = 0.0;

  static EnergyPoint from_db(double db) { return {std::pow(10.0, db / 10.0)}; }
  double to_db() const { return 10.0 * std::log10(ebn0); }
};

// Pointing-fade law: either the power-law fade with exponent parameter
// phi^2 and maximum collected fraction t_max (support (0, t_max]), or a
// fixed collected fraction t0 (static misalignment).
struct GammaFade {
  double phi2 = 0.0;   // phi^2 > 0
  double t_max = 0.0;  // "A" in the fade pdf, in (0, 1]
};

struct DeterministicFade {
  double t0 = 0.0;  // in [0, 1]
};

using FadeDistribution = std::variant<GammaFade, DeterministicFade>;

void validate(const GammaFade& fade);
void validate(const DeterministicFade& fade);
void validate(const FadeDistribution& fade);

// Coefficients of (sum_{k=0}^{M-1} x^k/k!)^power as natural-log magnitudes,
// index i = 0 .. power*(M-1). log_c[0] == 0 always; every entry is finite.
struct CoeffTable {
  int noise_modes = 1;  // M
  int power = 1;        // q
  std::vector<double> log_c;
};

// Cached, read-concurrent lookup (first fill of a given (M, q) is
// serialized). The returned pointer stays valid for the process lifetime.
std::shared_ptr<const CoeffTable> coeff_table(int noise_modes, int power);

// z_q = q/(1+q) * Eb/N0 * log2(Q) for the q-th term of the union bound,
// 1 <= q <= Q-1.
double compute_zq(int q, const EnergyPoint& point, int order);

// Static-misalignment weight (A z)^n e^{-A z} / n!, evaluated in the log
// domain. A in (0,1], z >= 0.
double weight_poisson(long long n, double a, double z);

// Pointing-fade weight phi^2 * igamma(n + phi^2, A z) / ((A z)^phi^2 n!).
// At z = 0 the continuous limit is 1 for n = 0 and 0 otherwise.
double weight_gamma(long long n, const GammaFade& fade, double z);

// Result of an ABEP evaluation. `unreliable` is the cancellation alarm: the
// alternating outer sum collapsed below 1e-3 of its largest term while the
// result is below 1e-14 absolute, so the value carries no trustworthy
// digits and must not be consumed silently.
struct AbepResult {
  double value = 0.0;
  bool unreliable = false;
};

// Evaluates the average bit-error probability of the pre-amplified PPM
// receiver for one (Q, M) pair. Construction precomputes, per outer index
// q, the coefficient table and the energy-independent inner sums
//
//   K_q(n) = sum_{i=n}^{q(M-1)} C(i+M-1, n+M-1) * i! * c_i^q / (1+q)^(i+M)
//
// (log domain), so an evaluation only accumulates K_q(n) * w(n) / q^n over
// n and alternates the short outer q sum in extended precision with
// compensated summation. Immutable after construction; evaluations are
// pure and safe to run fully in parallel.
class AbepEvaluator {
public:
  explicit AbepEvaluator(const PpmConfig& config);

  const PpmConfig& config() const { return config_; }

  AbepResult evaluate(const EnergyPoint& point, const FadeDistribution& fade) const;

private:
  struct QTerm {
    std::shared_ptr<const CoeffTable> coeffs;
    std::vector<double> log_k;  // ln K_q(n), n = 0 .. q(M-1)
    double log_outer_binomial;  // ln C(Q-1, q)
  };

  double log_inner_sum(int q, double x, const FadeDistribution& fade) const;

  PpmConfig config_;
  std::vector<QTerm> terms_;       // index q-1
  std::vector<double> log_fact_;  // ln n!, n = 0 .. (Q-1)(M-1)
};

// Convenience single-shot evaluation through a process-wide evaluator cache
// keyed by (Q, M) (read-concurrent, first fill serialized). Throws
// NumericalError if the cancellation alarm fires.
double abep(const PpmConfig& config, const EnergyPoint& point, const FadeDistribution& fade);

// Shared evaluator lookup used by abep(); exposed so sweeps can hold the
// evaluator directly.
std::shared_ptr<const AbepEvaluator> shared_evaluator(const PpmConfig& config);

// Link budget: Eb/N0 = G*E_in / (n_sp*h*f*(G-1)).
EnergyPoint ebn0_from_link(const AmplifierModel& amp, double e_in);

}  // namespace ppmbeam

#endif
