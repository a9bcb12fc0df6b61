#pragma once

// K-segment piecewise-linear form of a generator's quadratic fuel cost.
// Chords interpolate the quadratic at the segment breakpoints, so a convex
// cost is over-approximated in segment interiors and matched exactly at
// breakpoints, and the segment slopes are nondecreasing.

#include <stdexcept>
#include <string>
#include <vector>

#include "p2h/scenario.hpp"

namespace p2h {

struct CostSegment {
  double start_mw = 0.0;
  double end_mw = 0.0;
  double width_mw = 0.0;
  double slope_eur_per_mwh = 0.0;
};

struct PiecewiseCost {
  std::string generator_id;
  double p_min_mw = 0.0;
  double p_max_mw = 0.0;
  double base_cost_eur_per_h = 0.0;  // quadratic evaluated at p_min
  std::vector<CostSegment> segments;
};

inline double evaluate_quadratic(const Generator& g, double p_mw) {
  const double eps = 1e-9 * (1.0 + g.p_max_mw - g.p_min_mw);
  if (p_mw < g.p_min_mw - eps || p_mw > g.p_max_mw + eps)
    throw std::domain_error("evaluate_quadratic: power outside [p_min, p_max] for " + g.id);
  return g.cost_a_eur_per_mw2h * p_mw * p_mw + g.cost_b_eur_per_mwh * p_mw + g.cost_c_eur_per_h;
}

inline PiecewiseCost linearize(const Generator& g, int num_segments) {
  if (num_segments < 1) throw std::invalid_argument("linearize: need at least one segment");
  if (g.p_max_mw < g.p_min_mw) throw std::invalid_argument("linearize: p_max < p_min for " + g.id);

  PiecewiseCost pw;
  pw.generator_id = g.id;
  pw.p_min_mw = g.p_min_mw;
  pw.p_max_mw = g.p_max_mw;
  pw.base_cost_eur_per_h = evaluate_quadratic(g, g.p_min_mw);
  if (g.p_max_mw == g.p_min_mw) return pw;  // zero-width range, base cost only

  const double width = (g.p_max_mw - g.p_min_mw) / num_segments;
  pw.segments.reserve(num_segments);
  for (int k = 0; k < num_segments; ++k) {
    CostSegment seg;
    seg.start_mw = g.p_min_mw + k * width;
    seg.end_mw = k + 1 == num_segments ? g.p_max_mw : seg.start_mw + width;
    seg.width_mw = width;
    double cost_ini = evaluate_quadratic(g, seg.start_mw);
    double cost_fin = evaluate_quadratic(g, seg.end_mw);
    seg.slope_eur_per_mwh = (cost_fin - cost_ini) / width;
    pw.segments.push_back(seg);
  }
  return pw;
}

// Greedy left-to-right fill; optimal for convex (nondecreasing-slope) costs.
inline double evaluate_piecewise(const PiecewiseCost& pw, double p_mw) {
  const double eps = 1e-9 * (1.0 + pw.p_max_mw - pw.p_min_mw);
  if (p_mw < pw.p_min_mw - eps || p_mw > pw.p_max_mw + eps)
    throw std::domain_error("evaluate_piecewise: power outside [p_min, p_max]");
  double cost = pw.base_cost_eur_per_h;
  double remaining = std::max(0.0, p_mw - pw.p_min_mw);
  for (const auto& seg : pw.segments) {
    double take = std::min(remaining, seg.width_mw);
    cost += seg.slope_eur_per_mwh * take;
    remaining -= take;
    if (remaining <= 0.0) break;
  }
  return cost;
}

}  // namespace p2h
