#include "abep.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <shared_mutex>
#include <string>

#include "errors.hpp"
#include "numerics.hpp"

namespace ppmbeam {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

bool is_power_of_two(int v) { return v >= 1 && (v & (v - 1)) == 0; }

// log-domain polynomial product: out[j] = ln sum_k exp(a[k] + b[j-k]).
std::vector<double> log_convolve(const std::vector<double>& a, const std::vector<double>& b) {
  std::vector<double> out(a.size() + b.size() - 1);
  std::vector<double> scratch;
  scratch.reserve(std::min(a.size(), b.size()));
  for (std::size_t j = 0; j < out.size(); ++j) {
    scratch.clear();
    const std::size_t lo = j >= b.size() - 1 ? j - (b.size() - 1) : 0;
    const std::size_t hi = std::min(j, a.size() - 1);
    for (std::size_t k = lo; k <= hi; ++k) scratch.push_back(a[k] + b[j - k]);
    out[j] = log_sum_exp(scratch);
  }
  return out;
}

// ln of the base polynomial sum_{k=0}^{M-1} x^k / k!.
std::vector<double> log_base_poly(int noise_modes) {
  std::vector<double> base(static_cast<std::size_t>(noise_modes));
  base[0] = 0.0;
  for (int k = 1; k < noise_modes; ++k) base[k] = base[k - 1] - std::log(static_cast<double>(k));
  return base;
}

struct CoeffCache {
  std::shared_mutex mutex;
  std::map<std::pair<int, int>, std::shared_ptr<const CoeffTable>> tables;
};

CoeffCache& coeff_cache() {
  static CoeffCache cache;
  return cache;
}

// Log-weight of the Poisson (static) law: n ln(x) - x - ln n!.
double log_weight_poisson(long long n, double x, double log_fact_n) {
  if (x == 0.0) return n == 0 ? 0.0 : kNegInf;
  return static_cast<double>(n) * std::log(x) - x - log_fact_n;
}

// Log-weight of the power-law fade:
// ln phi^2 - phi^2 ln(x) + ln Gamma(n+phi^2) - ln n! + ln P(n+phi^2, x).
double log_weight_gamma(long long n, double phi2, double x, double log_fact_n) {
  if (x == 0.0) return n == 0 ? 0.0 : kNegInf;
  const double s = static_cast<double>(n) + phi2;
  return std::log(phi2) - phi2 * std::log(x) + ln_gamma(s) - log_fact_n +
         log_reg_lower_gamma(s, x);
}

}  // namespace

void PpmConfig::validate() const {
  if (!is_power_of_two(order) || order < 2)
    throw DomainError("PPM order must be a power of two >= 2, got " + std::to_string(order));
  if (noise_modes < 1)
    throw DomainError("noise mode count must be >= 1, got " + std::to_string(noise_modes));
}

void AmplifierModel::validate() const {
  if (!(gain > 1.0)) throw DomainError("amplifier gain must exceed 1, got " + std::to_string(gain));
  if (!(n_sp >= 1.0))
    throw DomainError("spontaneous emission factor must be >= 1, got " + std::to_string(n_sp));
  if (!(photon_energy > 0.0))
    throw DomainError("photon energy must be positive, got " + std::to_string(photon_energy));
}

void validate(const GammaFade& fade) {
  if (!(fade.phi2 > 0.0))
    throw DomainError("fade phi^2 must be positive, got " + std::to_string(fade.phi2));
  if (!(fade.t_max > 0.0) || fade.t_max > 1.0)
    throw DomainError("fade t_max must lie in (0, 1], got " + std::to_string(fade.t_max));
}

void validate(const DeterministicFade& fade) {
  if (!(fade.t0 >= 0.0) || fade.t0 > 1.0)
    throw DomainError("collected fraction t0 must lie in [0, 1], got " + std::to_string(fade.t0));
}

void validate(const FadeDistribution& fade) {
  std::visit([](const auto& f) { validate(f); }, fade);
}

std::shared_ptr<const CoeffTable> coeff_table(int noise_modes, int power) {
  if (noise_modes < 1)
    throw DomainError("coeff_table requires M >= 1, got " + std::to_string(noise_modes));
  if (power < 1) throw DomainError("coeff_table requires q >= 1, got " + std::to_string(power));

  auto& cache = coeff_cache();
  const auto key = std::make_pair(noise_modes, power);
  {
    std::shared_lock lock(cache.mutex);
    if (auto it = cache.tables.find(key); it != cache.tables.end()) return it->second;
  }
  std::unique_lock lock(cache.mutex);
  if (auto it = cache.tables.find(key); it != cache.tables.end()) return it->second;

  // Build the whole power chain up to `power`; each rung is one convolution
  // with the base polynomial and all intermediates are worth caching.
  const auto base = log_base_poly(noise_modes);
  std::shared_ptr<const CoeffTable> prev;
  if (auto it = cache.tables.find({noise_modes, 1}); it != cache.tables.end()) {
    prev = it->second;
  } else {
    prev = std::make_shared<const CoeffTable>(CoeffTable{noise_modes, 1, base});
    cache.tables.emplace(std::make_pair(noise_modes, 1), prev);
  }
  for (int q = 2; q <= power; ++q) {
    if (auto it = cache.tables.find({noise_modes, q}); it != cache.tables.end()) {
      prev = it->second;
      continue;
    }
    auto next = std::make_shared<const CoeffTable>(
        CoeffTable{noise_modes, q, log_convolve(prev->log_c, base)});
    cache.tables.emplace(std::make_pair(noise_modes, q), next);
    prev = next;
  }
  return prev;
}

double compute_zq(int q, const EnergyPoint& point, int order) {
  if (q < 1 || q > order - 1)
    throw DomainError("z_q requires 1 <= q <= Q-1, got q=" + std::to_string(q) +
                      " for Q=" + std::to_string(order));
  if (!(point.ebn0 >= 0.0))
    throw DomainError("Eb/N0 must be non-negative, got " + std::to_string(point.ebn0));
  return q / (1.0 + q) * point.ebn0 * std::log2(static_cast<double>(order));
}

double weight_poisson(long long n, double a, double z) {
  if (n < 0) throw DomainError("weight index n must be >= 0");
  if (!(a > 0.0) || a > 1.0) throw DomainError("weight_poisson requires A in (0, 1]");
  if (!(z >= 0.0)) throw DomainError("weight_poisson requires z >= 0");
  const double lf = ln_gamma(static_cast<double>(n) + 1.0);
  return std::exp(log_weight_poisson(n, a * z, lf));
}

double weight_gamma(long long n, const GammaFade& fade, double z) {
  if (n < 0) throw DomainError("weight index n must be >= 0");
  validate(fade);
  if (!(z >= 0.0)) throw DomainError("weight_gamma requires z >= 0");
  const double lf = ln_gamma(static_cast<double>(n) + 1.0);
  return std::exp(log_weight_gamma(n, fade.phi2, fade.t_max * z, lf));
}

AbepEvaluator::AbepEvaluator(const PpmConfig& config) : config_(config) {
  config_.validate();
  const int m = config_.noise_modes;
  const int q_max = config_.order - 1;
  const long long top = static_cast<long long>(q_max) * (m - 1) + m - 1;

  std::vector<double> lf(static_cast<std::size_t>(top) + 2);
  lf[0] = 0.0;
  for (std::size_t i = 1; i < lf.size(); ++i) lf[i] = lf[i - 1] + std::log(static_cast<double>(i));
  log_fact_.assign(lf.begin(), lf.begin() + static_cast<long long>(q_max) * (m - 1) + 1);

  terms_.reserve(static_cast<std::size_t>(q_max));
  std::vector<double> scratch;
  for (int q = 1; q <= q_max; ++q) {
    QTerm term;
    term.coeffs = coeff_table(m, q);
    term.log_outer_binomial = log_binomial(config_.order - 1, q);

    const long long n_top = static_cast<long long>(q) * (m - 1);
    const double log1q = std::log1p(static_cast<double>(q));
    term.log_k.resize(static_cast<std::size_t>(n_top) + 1);
    scratch.reserve(term.log_k.size());
    for (long long n = 0; n <= n_top; ++n) {
      scratch.clear();
      for (long long i = n; i <= n_top; ++i) {
        // ln [ C(i+M-1, n+M-1) * i! * c_i^q / (1+q)^(i+M) ]
        const double lb = lf[i + m - 1] - lf[n + m - 1] - lf[i - n];
        scratch.push_back(lb + lf[i] + term.coeffs->log_c[static_cast<std::size_t>(i)] -
                          (static_cast<double>(i) + m) * log1q);
      }
      term.log_k[static_cast<std::size_t>(n)] = log_sum_exp(scratch);
    }
    terms_.push_back(std::move(term));
  }
}

double AbepEvaluator::log_inner_sum(int q, double x, const FadeDistribution& fade) const {
  const QTerm& term = terms_[static_cast<std::size_t>(q - 1)];
  const double log_q = std::log(static_cast<double>(q));
  const bool gamma_fade = std::holds_alternative<GammaFade>(fade);
  const double phi2 = gamma_fade ? std::get<GammaFade>(fade).phi2 : 0.0;

  std::vector<double> terms(term.log_k.size());
  for (std::size_t n = 0; n < terms.size(); ++n) {
    const double lw = gamma_fade
                          ? log_weight_gamma(static_cast<long long>(n), phi2, x, log_fact_[n])
                          : log_weight_poisson(static_cast<long long>(n), x, log_fact_[n]);
    terms[n] = term.log_k[n] + lw - static_cast<double>(n) * log_q;
  }
  return log_sum_exp(terms);
}

AbepResult AbepEvaluator::evaluate(const EnergyPoint& point, const FadeDistribution& fade) const {
  if (!(point.ebn0 >= 0.0))
    throw DomainError("Eb/N0 must be non-negative, got " + std::to_string(point.ebn0));
  validate(fade);

  // Zero collected energy never reaches the decision statistic: the signal
  // slot wins with probability 1/Q and the ABEP is exactly 1/2.
  if (const auto* det = std::get_if<DeterministicFade>(&fade); det && det->t0 == 0.0)
    return {0.5, false};

  const double t_scale = std::holds_alternative<GammaFade>(fade)
                             ? std::get<GammaFade>(fade).t_max
                             : std::get<DeterministicFade>(fade).t0;

  const int q_max = config_.order - 1;
  std::vector<double> log_s(static_cast<std::size_t>(q_max));
  double log_max = kNegInf;
  for (int q = 1; q <= q_max; ++q) {
    const double z = compute_zq(q, point, config_.order);
    const double ls = terms_[static_cast<std::size_t>(q - 1)].log_outer_binomial +
                      log_inner_sum(q, t_scale * z, fade);
    log_s[static_cast<std::size_t>(q - 1)] = ls;
    log_max = std::max(log_max, ls);
  }
  if (log_max == kNegInf) return {0.0, false};

  // Alternating outer sum, max-shifted, compensated in extended precision.
  long double acc = 0.0L;
  long double comp = 0.0L;
  double largest_term = 0.0;
  for (int q = 1; q <= q_max; ++q) {
    const double shifted = std::exp(log_s[static_cast<std::size_t>(q - 1)] - log_max);
    largest_term = std::max(largest_term, shifted);
    const long double signed_term = (q % 2 == 1) ? shifted : -static_cast<long double>(shifted);
    const long double y = signed_term - comp;
    const long double t = acc + y;
    comp = (t - acc) - y;
    acc = t;
  }

  const double prefactor = config_.bit_error_prefactor();
  const double scale = std::exp(log_max);
  double value = static_cast<double>(prefactor * scale * acc);

  const bool alarm = std::fabs(static_cast<double>(acc)) < 1e-3 * largest_term &&
                     std::fabs(value) < 1e-14;
  if (alarm) return {value, true};

  if (value < 0.0) {
    // Not alarmed, so the negative part must be pure rounding noise.
    if (value > -1e-13 * prefactor * scale * largest_term) return {0.0, false};
    throw NumericalError("alternating ABEP sum produced a non-physical negative value " +
                         std::to_string(value));
  }
  return {std::min(value, 0.5), false};
}

namespace {

struct EvaluatorCache {
  std::shared_mutex mutex;
  std::map<std::pair<int, int>, std::shared_ptr<const AbepEvaluator>> map;
};

EvaluatorCache& evaluator_cache() {
  static EvaluatorCache cache;
  return cache;
}

}  // namespace

std::shared_ptr<const AbepEvaluator> shared_evaluator(const PpmConfig& config) {
  config.validate();
  auto& cache = evaluator_cache();
  const auto key = std::make_pair(config.order, config.noise_modes);
  {
    std::shared_lock lock(cache.mutex);
    if (auto it = cache.map.find(key); it != cache.map.end()) return it->second;
  }
  std::unique_lock lock(cache.mutex);
  if (auto it = cache.map.find(key); it != cache.map.end()) return it->second;
  auto ev = std::make_shared<const AbepEvaluator>(config);
  cache.map.emplace(key, ev);
  return ev;
}

double abep(const PpmConfig& config, const EnergyPoint& point, const FadeDistribution& fade) {
  const AbepResult r = shared_evaluator(config)->evaluate(point, fade);
  if (r.unreliable)
    throw NumericalError("ABEP cancellation alarm: result " + std::to_string(r.value) +
                         " carries no trustworthy digits");
  return r.value;
}

EnergyPoint ebn0_from_link(const AmplifierModel& amp, double e_in) {
  amp.validate();
  if (!(e_in >= 0.0))
    throw DomainError("input energy must be non-negative, got " + std::to_string(e_in));
  return {amp.gain * e_in / amp.noise_density()};
}

}  // namespace ppmbeam
