#include "optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "errors.hpp"

namespace ppmbeam {

void WidthSearch::validate() const {
  if (!(w_min > 0.0) || !(w_min < w_max))
    throw DomainError("width bracket requires 0 < w_min < w_max");
  if (!(fine_step > 0.0) || !(fine_step < coarse_step))
    throw DomainError("width search requires 0 < fine_step < coarse_step");
}

namespace {

std::vector<double> make_grid(double lo, double hi, double step) {
  std::vector<double> grid;
  const double eps = step * 1e-9;
  for (double w = lo; w <= hi + eps; w += step) grid.push_back(std::min(w, hi));
  if (grid.back() < hi - eps) grid.push_back(hi);
  return grid;
}

double eval_width(const AbepEvaluator& evaluator, const EnergyPoint& point,
                  const PointingGeometry& g_template, double width) {
  const AbepResult r = evaluator.evaluate(point, fade_params(g_template.with_beam_width(width)));
  if (r.unreliable)
    throw NumericalError("ABEP cancellation alarm during width search at w=" +
                         std::to_string(width));
  return r.value;
}

// index of the minimum, ties to the smaller width (ascending scan keeps the
// first of equals)
std::size_t argmin(const std::vector<double>& values) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < values.size(); ++i)
    if (values[i] < values[best]) best = i;
  return best;
}

}  // namespace

OptimumPoint optimize_width(const AbepEvaluator& evaluator, const EnergyPoint& point,
                            const PointingGeometry& g_template, const WidthSearch& search) {
  search.validate();
  g_template.with_beam_width(search.w_min).validate();

  const auto coarse_grid = make_grid(search.w_min, search.w_max, search.coarse_step);
  std::vector<double> coarse_vals(coarse_grid.size());
  for (std::size_t i = 0; i < coarse_grid.size(); ++i)
    coarse_vals[i] = eval_width(evaluator, point, g_template, coarse_grid[i]);

  const std::size_t ci = argmin(coarse_vals);
  if (ci == 0 || ci + 1 == coarse_grid.size())
    throw BracketError("coarse width argmin " + std::to_string(coarse_grid[ci]) +
                       " sits on the bracket edge [" + std::to_string(search.w_min) + ", " +
                       std::to_string(search.w_max) + "]; widen the bracket");

  const double fine_lo = std::max(search.w_min, coarse_grid[ci] - search.coarse_step);
  const double fine_hi = std::min(search.w_max, coarse_grid[ci] + search.coarse_step);
  const auto fine_grid = make_grid(fine_lo, fine_hi, search.fine_step);
  std::vector<double> fine_vals(fine_grid.size());
  for (std::size_t i = 0; i < fine_grid.size(); ++i)
    fine_vals[i] = eval_width(evaluator, point, g_template, fine_grid[i]);

  std::size_t fi = argmin(fine_vals);
  double w_opt = fine_grid[fi];
  double best = fine_vals[fi];

  // Certify fine-grid local optimality: a minimum on the fine-bracket edge
  // (only reachable through an exact tie with a coarse neighbour) is slid
  // downhill until both +-fine_step neighbours are no better.
  for (int guard = 0; guard < 10000; ++guard) {
    bool moved = false;
    for (const double cand : {w_opt - search.fine_step, w_opt + search.fine_step}) {
      if (cand < search.w_min || cand > search.w_max) continue;
      const double v = eval_width(evaluator, point, g_template, cand);
      if (v < best) {
        best = v;
        w_opt = cand;
        moved = true;
        break;
      }
    }
    if (!moved) break;
  }

  return {point.to_db(), w_opt, best};
}

OptimumPoint optimize_width(const PpmConfig& config, const EnergyPoint& point,
                            const PointingGeometry& g_template, const WidthSearch& search) {
  return optimize_width(*shared_evaluator(config), point, g_template, search);
}

std::vector<OptimumPoint> optimal_width_curve(const AbepEvaluator& evaluator,
                                              const std::vector<double>& ebn0_db_grid,
                                              const PointingGeometry& g_template,
                                              const WidthSearch& search, bool warm_start) {
  if (ebn0_db_grid.empty()) throw DomainError("energy grid must be non-empty");
  search.validate();

  std::vector<OptimumPoint> curve;
  curve.reserve(ebn0_db_grid.size());
  for (double db : ebn0_db_grid) {
    const EnergyPoint point = EnergyPoint::from_db(db);
    if (warm_start && !curve.empty()) {
      WidthSearch local = search;
      const double center = curve.back().w_opt;
      local.w_min = std::max(search.w_min, center - 5.0 * search.coarse_step);
      local.w_max = std::min(search.w_max, center + 5.0 * search.coarse_step);
      if (local.w_min < local.w_max) {
        try {
          curve.push_back(optimize_width(evaluator, point, g_template, local));
          continue;
        } catch (const BracketError&) {
          // fall through to the full user bracket
        }
      }
    }
    curve.push_back(optimize_width(evaluator, point, g_template, search));
  }
  return curve;
}

std::vector<OptimumPoint> optimal_width_curve(const PpmConfig& config,
                                              const std::vector<double>& ebn0_db_grid,
                                              const PointingGeometry& g_template,
                                              const WidthSearch& search, bool warm_start) {
  return optimal_width_curve(*shared_evaluator(config), ebn0_db_grid, g_template, search,
                             warm_start);
}

}  // namespace ppmbeam
