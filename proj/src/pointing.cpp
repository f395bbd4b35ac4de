#include "pointing.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "errors.hpp"
#include "numerics.hpp"

namespace ppmbeam {

void PointingGeometry::validate() const {
  if (!(aperture_radius > 0.0))
    throw DomainError("aperture radius must be positive, got " + std::to_string(aperture_radius));
  if (!(beam_width > 0.0))
    throw DomainError("beam width must be positive, got " + std::to_string(beam_width));
  if (!(sigma_x >= 0.0) || !(sigma_y >= 0.0))
    throw DomainError("jitter deviations must be non-negative");
}

EquivalentBeam equivalent_beam(const PointingGeometry& g) {
  g.validate();
  EquivalentBeam beam;
  beam.v = std::sqrt(std::numbers::pi / 2.0) * g.aperture_radius / g.beam_width;
  const double erf_v = erf(beam.v);
  beam.a0 = erf_v * erf_v;
  const double wzeq_sq = g.beam_width * g.beam_width * std::sqrt(std::numbers::pi) * erf_v /
                         (2.0 * beam.v * std::exp(-beam.v * beam.v));
  beam.w_zeq = std::sqrt(wzeq_sq);
  return beam;
}

double collected_fraction(double r, const EquivalentBeam& beam) {
  if (!(r >= 0.0)) throw DomainError("radial offset must be non-negative, got " + std::to_string(r));
  return beam.a0 * std::exp(-2.0 * r * r / (beam.w_zeq * beam.w_zeq));
}

PointingDerivation derive_fade(const PointingGeometry& g) {
  PointingDerivation d;
  d.beam = equivalent_beam(g);
  const double w2 = d.beam.w_zeq * d.beam.w_zeq;
  const double mu_sq = g.mu_x * g.mu_x + g.mu_y * g.mu_y;

  if (g.sigma_x == 0.0 && g.sigma_y == 0.0) {
    d.fade = DeterministicFade{d.beam.a0 * std::exp(-2.0 * mu_sq / w2)};
    return d;
  }

  const double sx2 = g.sigma_x * g.sigma_x;
  const double sy2 = g.sigma_y * g.sigma_y;
  const double sigma_mod_sq =
      std::pow((3.0 * g.mu_x * g.mu_x * sx2 * sx2 + 3.0 * g.mu_y * g.mu_y * sy2 * sy2 +
                sx2 * sx2 * sx2 + sy2 * sy2 * sy2) /
                   2.0,
               1.0 / 3.0);
  const double phi2 = w2 / (4.0 * sigma_mod_sq);
  const double exponent = (4.0 * sigma_mod_sq - 2.0 * sx2 - 2.0 * sy2 - 2.0 * mu_sq) / w2;
  double a = d.beam.a0 * std::exp(exponent);
  if (a > 1.0) {
    a = 1.0;
    d.clamped = true;
  }
  d.fade = GammaFade{phi2, a};
  return d;
}

FadeDistribution fade_params(const PointingGeometry& g) { return derive_fade(g).fade; }

double pdf_t(const GammaFade& fade, double t) {
  validate(fade);
  if (!(t >= 0.0)) throw DomainError("collected fraction must be non-negative, got " + std::to_string(t));
  if (t > fade.t_max) return 0.0;
  return fade.phi2 / std::pow(fade.t_max, fade.phi2) * std::pow(t, fade.phi2 - 1.0);
}

}  // namespace ppmbeam
