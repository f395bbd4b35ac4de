#ifndef PPMBEAM_POINTING_HPP
#define PPMBEAM_POINTING_HPP

#include "abep.hpp"

namespace ppmbeam {

// Link geometry. All lengths share one unit; the CLI normalizes to units of
// the aperture radius (a = 1). The beam width w_z is the 1/e^2 intensity
// radius of the received Gaussian beam. Misalignment means may be negative;
// jitter deviations are non-negative.
struct PointingGeometry {
  double aperture_radius = 1.0;  // a
  double beam_width = 1.0;       // w_z
  double mu_x = 0.0;
  double mu_y = 0.0;
  double sigma_x = 0.0;
  double sigma_y = 0.0;

  void validate() const;
  PointingGeometry with_beam_width(double w) const {
    PointingGeometry g = *this;
    g.beam_width = w;
    return g;
  }
};

// Aperture-averaged ("equivalent") beam quantities:
//   v      = sqrt(pi/2) * a / w_z
//   A0     = erf(v)^2            maximum collected fraction (at r = 0)
//   w_zeq  with w_zeq^2 = w_z^2 * sqrt(pi) erf(v) / (2 v exp(-v^2))
struct EquivalentBeam {
  double v = 0.0;
  double a0 = 0.0;
  double w_zeq = 0.0;
};

EquivalentBeam equivalent_beam(const PointingGeometry& g);

// Fraction of the beam energy collected by the aperture at radial offset r:
// A0 * exp(-2 r^2 / w_zeq^2).
double collected_fraction(double r, const EquivalentBeam& beam);

// Geometry -> fade-law derivation. Zero jitter on both axes yields the
// static law (Deterministic t0); otherwise the power-law fade with
//   sigma_mod^6 = (3 mu_x^2 s_x^4 + 3 mu_y^2 s_y^4 + s_x^6 + s_y^6) / 2
//   phi^2      = w_zeq^2 / (4 sigma_mod^2)
//   A          = A0 * exp[(4 s_mod^2 - 2 s_x^2 - 2 s_y^2 - 2 mu_x^2 - 2 mu_y^2)/w_zeq^2]
// (the exponent is the zero-sigma-safe form of the modified-Rayleigh
// parameters: 1/(2 phi_x^2) = 2 s_x^2/w_zeq^2 and the boresight terms are
// exactly 2 mu^2/w_zeq^2 independent of sigma). A is clamped to <= 1;
// `clamped` records when that happened.
struct PointingDerivation {
  EquivalentBeam beam;
  FadeDistribution fade;
  bool clamped = false;
};

PointingDerivation derive_fade(const PointingGeometry& g);

// Shorthand when only the fade law is needed.
FadeDistribution fade_params(const PointingGeometry& g);

// Fade pdf phi^2/A^phi^2 * t^(phi^2 - 1) on [0, A], zero beyond. t < 0 is a
// domain error.
double pdf_t(const GammaFade& fade, double t);

}  // namespace ppmbeam

#endif
