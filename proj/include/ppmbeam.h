/*
 * ppmbeam - C API
 *
 * Average bit-error probability of optically pre-amplified PPM receivers
 * under pointing errors: fade-parameter derivation from link geometry,
 * analytic ABEP evaluation, received-beam-width optimization and a
 * Monte Carlo receiver simulation that cross-validates the analytics.
 *
 * Conventions:
 *   - every function returning ppmbeam_status leaves outputs untouched on
 *     failure (except PPMBEAM_ERR_UNRELIABLE, which stores the flagged
 *     value) and records a human-readable message retrievable per thread
 *     via ppmbeam_last_error();
 *   - lengths share one unit (the CLI uses multiples of the aperture
 *     radius); the beam width is the 1/e^2 intensity radius;
 *   - Eb/N0 arguments named *_linear are linear ratios, *_db are decibels.
 */

#ifndef PPMBEAM_H
#define PPMBEAM_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define PPMBEAM_API __declspec(dllexport)
#else
#define PPMBEAM_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ppmbeam_status {
  PPMBEAM_OK = 0,
  PPMBEAM_ERR_DOMAIN = 1,     /* invalid argument / out-of-domain input */
  PPMBEAM_ERR_NUMERICAL = 2,  /* iteration cap hit or non-physical result */
  PPMBEAM_ERR_BRACKET = 3,    /* width argmin on the bracket edge */
  PPMBEAM_ERR_UNRELIABLE = 4, /* cancellation alarm; stored value untrustworthy */
  PPMBEAM_ERR_INTERNAL = 5
} ppmbeam_status;

PPMBEAM_API const char* ppmbeam_version(void);
PPMBEAM_API const char* ppmbeam_strerror(ppmbeam_status status);
/* Thread-local detail message of the last failing call ("" if none). */
PPMBEAM_API const char* ppmbeam_last_error(void);

/* ---- pointing geometry and fade laws ---------------------------------- */

typedef struct ppmbeam_geometry {
  double aperture_radius; /* a > 0 */
  double beam_width;      /* w_z > 0, 1/e^2 intensity radius */
  double mu_x, mu_y;      /* misalignment means */
  double sigma_x, sigma_y;/* misalignment deviations, >= 0 */
} ppmbeam_geometry;

typedef enum ppmbeam_fade_kind {
  PPMBEAM_FADE_GAMMA = 0,        /* power-law fade: phi2, t_max */
  PPMBEAM_FADE_DETERMINISTIC = 1 /* fixed collected fraction: t0 */
} ppmbeam_fade_kind;

typedef struct ppmbeam_fade {
  int kind; /* ppmbeam_fade_kind */
  double phi2;
  double t_max;
  double t0;
} ppmbeam_fade;

typedef struct ppmbeam_beam_info {
  double v;     /* sqrt(pi/2) a / w_z */
  double a0;    /* maximum collected fraction */
  double w_zeq; /* equivalent beam width */
} ppmbeam_beam_info;

/* Geometry -> (equivalent beam, fade law). Any output pointer may be NULL.
 * *clamped is set to 1 when the fade amplitude was clamped to 1. */
PPMBEAM_API ppmbeam_status ppmbeam_derive_fade(const ppmbeam_geometry* geometry,
                                               ppmbeam_beam_info* beam, ppmbeam_fade* fade,
                                               int* clamped);

/* Collected fraction at radial offset r for this geometry's beam. */
PPMBEAM_API ppmbeam_status ppmbeam_collected_fraction(const ppmbeam_geometry* geometry,
                                                      double radius, double* out);

/* Fade pdf at collected fraction t (gamma-kind fades only). */
PPMBEAM_API ppmbeam_status ppmbeam_fade_pdf(const ppmbeam_fade* fade, double t, double* out);

/* ---- ABEP model -------------------------------------------------------- */

/* Opaque evaluator for one (PPM order, noise modes) pair. Creation
 * precomputes the coefficient tables (heavyweight for large noise-mode
 * counts); evaluations afterwards are pure, lock-free and safe to call
 * concurrently from any number of threads. */
typedef struct ppmbeam_model ppmbeam_model;

PPMBEAM_API ppmbeam_status ppmbeam_model_create(int ppm_order, int noise_modes,
                                                ppmbeam_model** out);
PPMBEAM_API void ppmbeam_model_free(ppmbeam_model* model);
PPMBEAM_API int ppmbeam_model_order(const ppmbeam_model* model);
PPMBEAM_API int ppmbeam_model_noise_modes(const ppmbeam_model* model);

/* Average bit-error probability in [0, 0.5]. PPMBEAM_ERR_UNRELIABLE means
 * the cancellation alarm fired; *abep_out is stored but untrustworthy. */
PPMBEAM_API ppmbeam_status ppmbeam_abep(const ppmbeam_model* model, double ebn0_linear,
                                        const ppmbeam_fade* fade, double* abep_out);

/* Link budget: Eb/N0 = gain * e_in / (n_sp * photon_energy * (gain - 1)). */
PPMBEAM_API ppmbeam_status ppmbeam_ebn0_from_link(double gain, double n_sp, double photon_energy,
                                                  double e_in, double* ebn0_out);

/* ---- Monte Carlo receiver simulation ----------------------------------- */

typedef struct ppmbeam_sim_options {
  int64_t n_symbols;
  uint64_t seed;
  int n_chunks;  /* <= 0: default 64; the (seed, chunk) pair keys the RNG streams */
  int n_threads; /* <= 0: hardware concurrency; thread count never changes results */
} ppmbeam_sim_options;

typedef struct ppmbeam_sim_result {
  double abep_estimate;
  double std_error;
  int64_t n_symbols;
  int64_t symbol_errors;
} ppmbeam_sim_result;

/* Simulate with the collected fraction drawn from the fade law itself
 * (fixed t0, or inverse-CDF sampling of the power law). */
PPMBEAM_API ppmbeam_status ppmbeam_simulate_fade(const ppmbeam_model* model, double ebn0_linear,
                                                 const ppmbeam_fade* fade,
                                                 const ppmbeam_sim_options* options,
                                                 ppmbeam_sim_result* out);

/* Simulate with the collected fraction drawn from the physical geometry
 * (Gaussian offsets through the aperture model). */
PPMBEAM_API ppmbeam_status ppmbeam_simulate_geometry(const ppmbeam_model* model,
                                                     double ebn0_linear,
                                                     const ppmbeam_geometry* geometry,
                                                     const ppmbeam_sim_options* options,
                                                     ppmbeam_sim_result* out);

/* ---- beam-width optimization -------------------------------------------- */

typedef struct ppmbeam_width_search {
  double w_min, w_max;     /* bracket, same unit as the geometry lengths */
  double coarse_step;      /* stage-1 resolution */
  double fine_step;        /* stage-2 resolution */
} ppmbeam_width_search;

typedef struct ppmbeam_optimum {
  double ebn0_db;
  double w_opt;
  double abep_min;
} ppmbeam_optimum;

/* Two-stage grid search; the template geometry's beam width is ignored.
 * PPMBEAM_ERR_BRACKET reports a coarse argmin on the bracket edge. */
PPMBEAM_API ppmbeam_status ppmbeam_optimize_width(const ppmbeam_model* model, double ebn0_db,
                                                  const ppmbeam_geometry* g_template,
                                                  const ppmbeam_width_search* search,
                                                  ppmbeam_optimum* out);

/* One optimum per grid entry; out_points must hold n_points entries.
 * warm_start != 0 re-centers each bracket on the previous optimum. */
PPMBEAM_API ppmbeam_status ppmbeam_optimal_width_curve(const ppmbeam_model* model,
                                                       const double* ebn0_db, size_t n_points,
                                                       const ppmbeam_geometry* g_template,
                                                       const ppmbeam_width_search* search,
                                                       int warm_start, ppmbeam_optimum* out_points);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* PPMBEAM_H */
