#include "mcclt/variance_schedule.hpp"

#include <cmath>
#include <stdexcept>

namespace mcclt {

void EpisodeStats::record_episode(int length, double episode_return) {
  if (length < 1) {
    throw std::invalid_argument("record_episode: length must be >= 1");
  }
  if (!std::isfinite(episode_return)) {
    throw std::invalid_argument("record_episode: return must be finite");
  }
  window_.push_back({length, episode_return});
  if (window_.size() > kWindowCapacity) window_.pop_front();
  double len_sum = 0.0;
  double ret_sum = 0.0;
  for (const Entry& e : window_) {
    len_sum += e.length;
    ret_sum += e.episode_return;
  }
  l_cur_ = len_sum / static_cast<double>(window_.size());
  g_cur_ = ret_sum / static_cast<double>(window_.size());
}

double sigma_sq(const EpisodeStats& stats, const VarianceScheduleConfig& cfg,
                double t) {
  if (cfg.sigma_sq_min <= 0.0) {
    throw std::invalid_argument("sigma_sq: sigma_sq_min must be positive");
  }
  if (t < 0.0) {
    throw std::domain_error("sigma_sq: t must be >= 0");
  }
  const double l = stats.l_cur();
  if (l <= 0.0) {
    throw std::logic_error("sigma_sq: l_cur must be positive");
  }
  const double g_sq = stats.g_cur() * stats.g_cur();
  if (g_sq <= cfg.sigma_sq_min) return cfg.sigma_sq_min;
  const double linear = (cfg.sigma_sq_min - g_sq) / l * t + g_sq;
  return std::max(linear, cfg.sigma_sq_min);
}

std::vector<double> target_quantiles(double mean, double t,
                                     const EpisodeStats& stats,
                                     const VarianceScheduleConfig& cfg,
                                     const ZGrid& grid) {
  if (grid.n != cfg.n_quantiles) {
    throw std::invalid_argument("target_quantiles: z-grid size mismatch");
  }
  const double sigma = std::sqrt(sigma_sq(stats, cfg, t));
  std::vector<double> q(grid.z.size());
  for (std::size_t i = 0; i < grid.z.size(); ++i) {
    q[i] = mean + sigma * grid.z[i];
  }
  return q;
}

std::vector<double> distributional_bellman_target(
    const std::vector<double>& q_next, double reward, double gamma) {
  if (!(gamma > 0.0 && gamma <= 1.0)) {
    throw std::invalid_argument("bellman target: gamma must lie in (0, 1]");
  }
  std::vector<double> out(q_next.size());
  for (std::size_t i = 0; i < q_next.size(); ++i) {
    out[i] = reward + gamma * q_next[i];
  }
  return out;
}

}  // namespace mcclt
