#pragma once

#include <vector>

namespace mcclt {

// The z-score grid backing every quantile computation: z[i] is the standard
// normal quantile at tau_i = (i+1)/(n+1). Antisymmetric by construction,
// z[i] == -z[n-1-i] exactly, with an exact 0.0 middle entry for odd n.
struct ZGrid {
  int n = 0;
  std::vector<double> z;
};

// Standard normal CDF, computed through erfc to stay accurate in the tails.
// Throws std::domain_error on non-finite input.
double std_normal_cdf(double x);

// Inverse standard normal CDF for p in (0, 1). Rational approximation
// polished by a Halley step on the CDF; |cdf(result) - p| < 1e-12 away from
// the extreme tails. Throws std::domain_error outside (0, 1).
double std_normal_inv_cdf(double p);

// Builds the n-bar quantile grid. Throws std::domain_error for n < 1.
ZGrid quantile_z_grid(int n);

}  // namespace mcclt
