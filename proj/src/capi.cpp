#include "ppmbeam.h"

#include <exception>
#include <new>
#include <string>

#include "abep.hpp"
#include "errors.hpp"
#include "montecarlo.hpp"
#include "optimizer.hpp"
#include "pointing.hpp"
#include "version.hpp"

struct ppmbeam_model {
  ppmbeam::AbepEvaluator evaluator;
};

namespace {

thread_local std::string g_last_error;

void set_error(const std::string& msg) { g_last_error = msg; }

template <typename Fn>
ppmbeam_status guarded(Fn&& fn) {
  try {
    g_last_error.clear();
    return fn();
  } catch (const ppmbeam::DomainError& e) {
    set_error(e.what());
    return PPMBEAM_ERR_DOMAIN;
  } catch (const ppmbeam::BracketError& e) {
    set_error(e.what());
    return PPMBEAM_ERR_BRACKET;
  } catch (const ppmbeam::NumericalError& e) {
    set_error(e.what());
    return PPMBEAM_ERR_NUMERICAL;
  } catch (const std::bad_alloc&) {
    set_error("out of memory");
    return PPMBEAM_ERR_INTERNAL;
  } catch (const std::exception& e) {
    set_error(e.what());
    return PPMBEAM_ERR_INTERNAL;
  }
}

ppmbeam_status require(bool ok, const char* what) {
  if (ok) return PPMBEAM_OK;
  set_error(what);
  return PPMBEAM_ERR_DOMAIN;
}

ppmbeam::PointingGeometry to_cxx(const ppmbeam_geometry& g) {
  return {g.aperture_radius, g.beam_width, g.mu_x, g.mu_y, g.sigma_x, g.sigma_y};
}

ppmbeam::FadeDistribution to_cxx(const ppmbeam_fade& f) {
  if (f.kind == PPMBEAM_FADE_DETERMINISTIC) return ppmbeam::DeterministicFade{f.t0};
  if (f.kind == PPMBEAM_FADE_GAMMA) return ppmbeam::GammaFade{f.phi2, f.t_max};
  throw ppmbeam::DomainError("unknown fade kind " + std::to_string(f.kind));
}

ppmbeam_fade to_c(const ppmbeam::FadeDistribution& fade) {
  ppmbeam_fade out{};
  if (const auto* det = std::get_if<ppmbeam::DeterministicFade>(&fade)) {
    out.kind = PPMBEAM_FADE_DETERMINISTIC;
    out.t0 = det->t0;
  } else {
    const auto& gf = std::get<ppmbeam::GammaFade>(fade);
    out.kind = PPMBEAM_FADE_GAMMA;
    out.phi2 = gf.phi2;
    out.t_max = gf.t_max;
  }
  return out;
}

ppmbeam::SimSpec make_spec(const ppmbeam_model& model, double ebn0,
                           const ppmbeam_sim_options& options) {
  ppmbeam::SimSpec spec;
  spec.config = model.evaluator.config();
  spec.point = {ebn0};
  spec.n_symbols = options.n_symbols;
  spec.seed = options.seed;
  spec.n_chunks = options.n_chunks > 0 ? options.n_chunks : 64;
  spec.n_threads = options.n_threads;
  return spec;
}

void fill(ppmbeam_sim_result& out, const ppmbeam::SimResult& r) {
  out.abep_estimate = r.abep_estimate;
  out.std_error = r.std_error;
  out.n_symbols = r.n_symbols;
  out.symbol_errors = r.symbol_errors;
}

}  // namespace

extern "C" {

const char* ppmbeam_version(void) { return ppmbeam::kVersion; }

const char* ppmbeam_strerror(ppmbeam_status status) {
  switch (status) {
    case PPMBEAM_OK: return "ok";
    case PPMBEAM_ERR_DOMAIN: return "domain error";
    case PPMBEAM_ERR_NUMERICAL: return "numerical error";
    case PPMBEAM_ERR_BRACKET: return "bracket edge";
    case PPMBEAM_ERR_UNRELIABLE: return "cancellation alarm";
    case PPMBEAM_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* ppmbeam_last_error(void) { return g_last_error.c_str(); }

ppmbeam_status ppmbeam_derive_fade(const ppmbeam_geometry* geometry, ppmbeam_beam_info* beam,
                                   ppmbeam_fade* fade, int* clamped) {
  if (auto s = require(geometry != nullptr, "geometry is null")) return s;
  return guarded([&] {
    const auto d = ppmbeam::derive_fade(to_cxx(*geometry));
    if (beam) *beam = {d.beam.v, d.beam.a0, d.beam.w_zeq};
    if (fade) *fade = to_c(d.fade);
    if (clamped) *clamped = d.clamped ? 1 : 0;
    return PPMBEAM_OK;
  });
}

ppmbeam_status ppmbeam_collected_fraction(const ppmbeam_geometry* geometry, double radius,
                                          double* out) {
  if (auto s = require(geometry != nullptr && out != nullptr, "null argument")) return s;
  return guarded([&] {
    *out = ppmbeam::collected_fraction(radius, ppmbeam::equivalent_beam(to_cxx(*geometry)));
    return PPMBEAM_OK;
  });
}

ppmbeam_status ppmbeam_fade_pdf(const ppmbeam_fade* fade, double t, double* out) {
  if (auto s = require(fade != nullptr && out != nullptr, "null argument")) return s;
  return guarded([&] {
    if (fade->kind != PPMBEAM_FADE_GAMMA)
      throw ppmbeam::DomainError("fade pdf is defined for gamma-kind fades");
    *out = ppmbeam::pdf_t(ppmbeam::GammaFade{fade->phi2, fade->t_max}, t);
    return PPMBEAM_OK;
  });
}

ppmbeam_status ppmbeam_model_create(int ppm_order, int noise_modes, ppmbeam_model** out) {
  if (auto s = require(out != nullptr, "output pointer is null")) return s;
  return guarded([&] {
    *out = new ppmbeam_model{
        ppmbeam::AbepEvaluator(ppmbeam::PpmConfig{ppm_order, noise_modes})};
    return PPMBEAM_OK;
  });
}

void ppmbeam_model_free(ppmbeam_model* model) { delete model; }

int ppmbeam_model_order(const ppmbeam_model* model) {
  return model ? model->evaluator.config().order : 0;
}

int ppmbeam_model_noise_modes(const ppmbeam_model* model) {
  return model ? model->evaluator.config().noise_modes : 0;
}

ppmbeam_status ppmbeam_abep(const ppmbeam_model* model, double ebn0_linear,
                            const ppmbeam_fade* fade, double* abep_out) {
  if (auto s = require(model != nullptr && fade != nullptr && abep_out != nullptr,
                       "null argument"))
    return s;
  return guarded([&]() -> ppmbeam_status {
    const auto r = model->evaluator.evaluate({ebn0_linear}, to_cxx(*fade));
    *abep_out = r.value;
    if (r.unreliable) {
      set_error("cancellation alarm: the alternating sum lost all significant digits");
      return PPMBEAM_ERR_UNRELIABLE;
    }
    return PPMBEAM_OK;
  });
}

ppmbeam_status ppmbeam_ebn0_from_link(double gain, double n_sp, double photon_energy, double e_in,
                                      double* ebn0_out) {
  if (auto s = require(ebn0_out != nullptr, "output pointer is null")) return s;
  return guarded([&] {
    *ebn0_out = ppmbeam::ebn0_from_link({gain, n_sp, photon_energy}, e_in).ebn0;
    return PPMBEAM_OK;
  });
}

ppmbeam_status ppmbeam_simulate_fade(const ppmbeam_model* model, double ebn0_linear,
                                     const ppmbeam_fade* fade,
                                     const ppmbeam_sim_options* options,
                                     ppmbeam_sim_result* out) {
  if (auto s = require(model && fade && options && out, "null argument")) return s;
  return guarded([&] {
    auto spec = make_spec(*model, ebn0_linear, *options);
    spec.source = to_cxx(*fade);
    fill(*out, ppmbeam::simulate_abep(spec));
    return PPMBEAM_OK;
  });
}

ppmbeam_status ppmbeam_simulate_geometry(const ppmbeam_model* model, double ebn0_linear,
                                         const ppmbeam_geometry* geometry,
                                         const ppmbeam_sim_options* options,
                                         ppmbeam_sim_result* out) {
  if (auto s = require(model && geometry && options && out, "null argument")) return s;
  return guarded([&] {
    auto spec = make_spec(*model, ebn0_linear, *options);
    spec.source = to_cxx(*geometry);
    fill(*out, ppmbeam::simulate_abep(spec));
    return PPMBEAM_OK;
  });
}

ppmbeam_status ppmbeam_optimize_width(const ppmbeam_model* model, double ebn0_db,
                                      const ppmbeam_geometry* g_template,
                                      const ppmbeam_width_search* search, ppmbeam_optimum* out) {
  if (auto s = require(model && g_template && search && out, "null argument")) return s;
  return guarded([&] {
    const auto p = ppmbeam::optimize_width(
        model->evaluator, ppmbeam::EnergyPoint::from_db(ebn0_db), to_cxx(*g_template),
        {search->w_min, search->w_max, search->coarse_step, search->fine_step});
    *out = {p.ebn0_db, p.w_opt, p.abep_min};
    return PPMBEAM_OK;
  });
}

ppmbeam_status ppmbeam_optimal_width_curve(const ppmbeam_model* model, const double* ebn0_db,
                                           size_t n_points, const ppmbeam_geometry* g_template,
                                           const ppmbeam_width_search* search, int warm_start,
                                           ppmbeam_optimum* out_points) {
  if (auto s = require(model && ebn0_db && g_template && search && out_points && n_points > 0,
                       "null argument or empty grid"))
    return s;
  return guarded([&] {
    const std::vector<double> grid(ebn0_db, ebn0_db + n_points);
    const auto curve = ppmbeam::optimal_width_curve(
        model->evaluator, grid, to_cxx(*g_template),
        {search->w_min, search->w_max, search->coarse_step, search->fine_step}, warm_start != 0);
    for (size_t i = 0; i < curve.size(); ++i)
      out_points[i] = {curve[i].ebn0_db, curve[i].w_opt, curve[i].abep_min};
    return PPMBEAM_OK;
  });
}

}  // extern "C"
