#include "rng.hpp"

#include <cmath>

#include "errors.hpp"
#include "numerics.hpp"

namespace ppmbeam {

namespace {

inline std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

}  // namespace

Xoshiro256pp::Xoshiro256pp(std::uint64_t s0, std::uint64_t s1, std::uint64_t s2,
                           std::uint64_t s3)
    : s_{s0, s1, s2, s3} {
  if ((s0 | s1 | s2 | s3) == 0) s_[0] = 1;  // the all-zero state is absorbing
}

std::uint64_t Xoshiro256pp::next() {
  const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
  const std::uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = rotl(s_[3], 45);
  return result;
}

RandomStream::RandomStream(std::uint64_t seed, std::uint64_t stream)
    : engine_([&] {
        SplitMix64 sm(seed + 0x9E3779B97F4A7C15ULL * (stream + 1));
        const std::uint64_t a = sm.next(), b = sm.next(), c = sm.next(), d = sm.next();
        return Xoshiro256pp(a, b, c, d);
      }()) {}

double RandomStream::uniform() {
  return static_cast<double>(engine_.next() >> 11) * 0x1.0p-53;
}

double RandomStream::uniform_pos() {
  for (;;) {
    const double u = uniform();
    if (u > 0.0) return u;
  }
}

double RandomStream::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_normal_;
  }
  double u, v, s;
  do {
    u = 2.0 * uniform() - 1.0;
    v = 2.0 * uniform() - 1.0;
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  const double f = std::sqrt(-2.0 * std::log(s) / s);
  spare_normal_ = v * f;
  has_spare_ = true;
  return u * f;
}

double RandomStream::gamma(double shape) {
  if (!(shape > 0.0)) throw DomainError("gamma shape must be positive");
  if (shape < 1.0) {
    // boost: Gamma(a) = Gamma(a+1) * U^(1/a)
    return gamma(shape + 1.0) * std::pow(uniform_pos(), 1.0 / shape);
  }
  // Marsaglia-Tsang squeeze
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x, v;
    do {
      x = normal();
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = uniform_pos();
    if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
    if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
  }
}

long long RandomStream::poisson(double mean) {
  if (!(mean >= 0.0)) throw DomainError("poisson mean must be non-negative");
  if (mean == 0.0) return 0;
  if (mean < 30.0) {
    // inversion by unnormalized product
    const double limit = std::exp(-mean);
    long long k = 0;
    double p = uniform();
    while (p > limit) {
      ++k;
      p *= uniform();
    }
    return k;
  }
  // Hormann's PTRD transformed-rejection sampler.
  const double smu = std::sqrt(mean);
  const double b = 0.931 + 2.53 * smu;
  const double a = -0.059 + 0.02483 * b;
  const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
  const double v_r = 0.9277 - 3.6224 / (b - 2.0);
  const double log_mean = std::log(mean);
  for (;;) {
    double u = uniform() - 0.5;
    const double v = uniform();
    const double us = 0.5 - std::fabs(u);
    const double kf = std::floor((2.0 * a / us + b) * u + mean + 0.43);
    if (us >= 0.07 && v <= v_r) return static_cast<long long>(kf);
    if (kf < 0.0 || (us < 0.013 && v > us)) continue;
    const double k = kf;
    if (std::log(v * inv_alpha / (a / (us * us) + b)) <=
        k * log_mean - mean - ln_gamma(k + 1.0))
      return static_cast<long long>(kf);
  }
}

}  // namespace ppmbeam
