#include "mcclt/advantage.hpp"

#include <cmath>
#include <stdexcept>

namespace mcclt {

PathEstimates gae(const std::vector<double>& rewards,
                  const std::vector<double>& values, double gamma,
                  double lambda) {
  if (values.size() != rewards.size() + 1) {
    throw std::invalid_argument(
        "gae: values must have length rewards.size() + 1");
  }
  const std::size_t n = rewards.size();
  PathEstimates est;
  est.advantages.assign(n, 0.0);
  est.returns_to_go.assign(n, 0.0);
  double running_adv = 0.0;
  double running_ret = values[n];  // bootstrap
  for (std::size_t t = n; t-- > 0;) {
    const double delta = rewards[t] + gamma * values[t + 1] - values[t];
    running_adv = delta + gamma * lambda * running_adv;
    est.advantages[t] = running_adv;
    running_ret = rewards[t] + gamma * running_ret;
    est.returns_to_go[t] = running_ret;
  }
  return est;
}

std::vector<double> undiscounted_returns_to_go(
    const std::vector<double>& rewards, double bootstrap) {
  std::vector<double> rtg(rewards.size());
  double running = bootstrap;
  for (std::size_t t = rewards.size(); t-- > 0;) {
    running += rewards[t];
    rtg[t] = running;
  }
  return rtg;
}

void normalize_advantages(double* data, std::size_t n) {
  if (n < 2) {
    throw std::invalid_argument("normalize_advantages: need batch size >= 2");
  }
  double mean = 0.0;
  for (std::size_t i = 0; i < n; ++i) mean += data[i];
  mean /= static_cast<double>(n);
  double var = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = data[i] - mean;
    var += d * d;
  }
  const double std = std::sqrt(var / static_cast<double>(n));
  if (std < 1e-8) {
    for (std::size_t i = 0; i < n; ++i) data[i] -= mean;
    return;
  }
  for (std::size_t i = 0; i < n; ++i) data[i] = (data[i] - mean) / std;
}

void normalize_advantages(std::vector<double>& batch) {
  normalize_advantages(batch.data(), batch.size());
}

}  // namespace mcclt
