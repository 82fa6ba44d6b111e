#pragma once

#include <deque>
#include <vector>

#include "mcclt/core_stats.hpp"

namespace mcclt {

// Rolling window over the most recent completed episodes. Before the first
// episode lands it reports l_cur = 1 and G_cur = 0, which pins the variance
// schedule at its floor.
class EpisodeStats {
 public:
  static constexpr int kWindowCapacity = 50;

  void record_episode(int length, double episode_return);

  double l_cur() const { return l_cur_; }
  double g_cur() const { return g_cur_; }
  int window_size() const { return static_cast<int>(window_.size()); }

 private:
  struct Entry {
    int length;
    double episode_return;
  };
  std::deque<Entry> window_;
  double l_cur_ = 1.0;
  double g_cur_ = 0.0;
};

struct VarianceScheduleConfig {
  double sigma_sq_min = 100.0;
  int n_quantiles = 100;
};

// Target variance at env timestep t: decays linearly from G_cur^2 at t = 0 to
// sigma_sq_min at t = l_cur, and stays floored at sigma_sq_min afterwards
// (also whenever G_cur^2 is already below the floor).
double sigma_sq(const EpisodeStats& stats, const VarianceScheduleConfig& cfg,
                double t);

// Quantile bars of N(mean, sigma_sq(t)) on the z-grid.
std::vector<double> target_quantiles(double mean, double t,
                                     const EpisodeStats& stats,
                                     const VarianceScheduleConfig& cfg,
                                     const ZGrid& grid);

// Bar-wise r + gamma * q_next; shrinks the spread by gamma.
std::vector<double> distributional_bellman_target(
    const std::vector<double>& q_next, double reward, double gamma);

}  // namespace mcclt
