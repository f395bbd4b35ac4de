#ifndef PPMBEAM_OPTIMIZER_HPP
#define PPMBEAM_OPTIMIZER_HPP

#include <vector>

#include "abep.hpp"
#include "pointing.hpp"

namespace ppmbeam {

// Two-stage grid search bracket for the beam width, in the same length unit
// as the geometry (the CLI uses units of the aperture radius). Stage one
// scans [w_min, w_max] at coarse_step; stage two rescans the +-coarse_step
// neighbourhood of the coarse argmin at fine_step.
struct WidthSearch {
  double w_min = 1.0;
  double w_max = 60.0;
  double coarse_step = 1.0;
  double fine_step = 0.1;

  void validate() const;
};

struct OptimumPoint {
  double ebn0_db = 0.0;
  double w_opt = 0.0;
  double abep_min = 0.0;
};

// ABEP-minimizing beam width for one energy point. The template geometry's
// beam width is ignored (swept); ties break toward the smaller width. A
// coarse argmin on the bracket edge raises BracketError instead of
// extrapolating.
OptimumPoint optimize_width(const AbepEvaluator& evaluator, const EnergyPoint& point,
                            const PointingGeometry& g_template, const WidthSearch& search);
OptimumPoint optimize_width(const PpmConfig& config, const EnergyPoint& point,
                            const PointingGeometry& g_template, const WidthSearch& search);

// One optimum per grid value (dB). With warm_start each point's bracket is
// re-centered on the previous optimum (+-5 coarse steps, clamped to the
// user bracket); a bracket-edge failure inside the narrowed bracket falls
// back to the full bracket before the error propagates, so no optimum is
// ever extrapolated.
std::vector<OptimumPoint> optimal_width_curve(const AbepEvaluator& evaluator,
                                              const std::vector<double>& ebn0_db_grid,
                                              const PointingGeometry& g_template,
                                              const WidthSearch& search, bool warm_start = true);
std::vector<OptimumPoint> optimal_width_curve(const PpmConfig& config,
                                              const std::vector<double>& ebn0_db_grid,
                                              const PointingGeometry& g_template,
                                              const WidthSearch& search, bool warm_start = true);

}  // namespace ppmbeam

#endif
