#pragma once

#include <vector>

namespace mcclt {

// Per-path GAE output: advantages plus discounted returns-to-go (the scalar
// baseline regression target).
struct PathEstimates {
  std::vector<double> advantages;
  std::vector<double> returns_to_go;
};

// values must hold one entry per reward plus the bootstrap value of the state
// after the last step (0 at a true episode end).
PathEstimates gae(const std::vector<double>& rewards,
                  const std::vector<double>& values, double gamma,
                  double lambda);

// Plain reward sums from each step to the end of the path, plus bootstrap.
std::vector<double> undiscounted_returns_to_go(
    const std::vector<double>& rewards, double bootstrap);

// Centers to mean 0 and scales to std 1 in place (population std). Batches
// with std below 1e-8 are only centered. Throws for batches smaller than 2.
void normalize_advantages(std::vector<double>& batch);
void normalize_advantages(double* data, std::size_t n);

}  // namespace mcclt
