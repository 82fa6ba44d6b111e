#pragma once

#include <vector>

#include "mcclt/core_stats.hpp"

namespace mcclt {

// Lower clamp for per-bar standard deviations; a bar sitting on the wrong
// side of the mean yields a negative sigma estimate and gets clamped here,
// surfacing the disorder through the reconstruction gap instead.
inline constexpr double kSigmaFloor = 1e-6;

// Best-fit normal seen through the quantile bars: per-bar sigma estimates are
// averaged (skipping the z = 0 middle bar of odd grids) and the bars a
// well-calibrated N(q_avg, sigma_avg^2) would produce are reconstructed.
struct NormalFit {
  double q_avg = 0.0;
  double sigma_avg = 0.0;
  std::vector<double> reconstructed;
};

NormalFit fit_normal(const std::vector<double>& q, const ZGrid& grid);

// Squared gap between the bars and their reconstruction, summed over bars.
double uncertainty_error(const std::vector<double>& q, const ZGrid& grid);

// sigmoid(-e * temperature) + 0.5, mapping zero error to weight 1 and large
// errors toward 0.5.
double uncertainty_weight(double e, double temperature);

}  // namespace mcclt
