#include "mcclt/uncertainty.hpp"

#include <cmath>
#include <stdexcept>

namespace mcclt {

NormalFit fit_normal(const std::vector<double>& q, const ZGrid& grid) {
  if (q.size() != grid.z.size()) {
    throw std::invalid_argument("fit_normal: bar count does not match z-grid");
  }
  if (q.size() < 2) {
    throw std::invalid_argument("fit_normal: need at least 2 quantile bars");
  }
  NormalFit fit;
  double sum = 0.0;
  for (double v : q) sum += v;
  fit.q_avg = sum / static_cast<double>(q.size());

  double sigma_sum = 0.0;
  int sigma_count = 0;
  for (std::size_t i = 0; i < q.size(); ++i) {
    if (grid.z[i] == 0.0) continue;  // middle bar of an odd grid
    const double sigma_i = (q[i] - fit.q_avg) / grid.z[i];
    sigma_sum += std::max(sigma_i, kSigmaFloor);
    ++sigma_count;
  }
  fit.sigma_avg = sigma_sum / static_cast<double>(sigma_count);

  fit.reconstructed.resize(q.size());
  for (std::size_t i = 0; i < q.size(); ++i) {
    fit.reconstructed[i] = fit.q_avg + fit.sigma_avg * grid.z[i];
  }
  return fit;
}

double uncertainty_error(const std::vector<double>& q, const ZGrid& grid) {
  const NormalFit fit = fit_normal(q, grid);
  double e = 0.0;
  for (std::size_t i = 0; i < q.size(); ++i) {
    const double d = q[i] - fit.reconstructed[i];
    e += d * d;
  }
  return e;
}

double uncertainty_weight(double e, double temperature) {
  if (e < 0.0) {
    throw std::domain_error("uncertainty_weight: error must be >= 0");
  }
  if (temperature <= 0.0) {
    throw std::domain_error("uncertainty_weight: temperature must be > 0");
  }
  return 1.0 / (1.0 + std::exp(e * temperature)) + 0.5;
}

}  // namespace mcclt
