#include "mcclt/core_stats.hpp"

#include <cmath>
#include <stdexcept>

namespace mcclt {
namespace {

constexpr double kSqrt2 = 1.4142135623730950488016887242097;
constexpr double kSqrt2Pi = 2.5066282746310005024157652848110;

// Peter Acklam's rational approximation to the normal quantile,
// relative error < 1.15e-9 before polishing.
double inv_cdf_estimate(double p) {
  static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                             -2.759285104469687e+02, 1.383577518672690e+02,
                             -3.066479806614716e+01, 2.506628277459239e+00};
  static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                             -1.556989798598866e+02, 6.680131188771972e+01,
                             -1.328068155288572e+01};
  static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                             -2.400758277161838e+00, -2.549732539343734e+00,
                             4.374664141464968e+00,  2.938163982698783e+00};
  static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                             2.445134137142996e+00, 3.754408661907416e+00};
  constexpr double p_low = 0.02425;

  if (p < p_low) {
    const double q = std::sqrt(-2.0 * std::log(p));
    return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q +
            c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  if (p > 1.0 - p_low) {
    const double q = std::sqrt(-2.0 * std::log(1.0 - p));
    return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q +
             c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  const double q = p - 0.5;
  const double r = q * q;
  return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) *
         q /
         (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
}

}  // namespace

double std_normal_cdf(double x) {
  if (!std::isfinite(x)) {
    throw std::domain_error("std_normal_cdf: non-finite input");
  }
  return 0.5 * std::erfc(-x / kSqrt2);
}

double std_normal_inv_cdf(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw std::domain_error("std_normal_inv_cdf: p must lie in (0, 1)");
  }
  double x = inv_cdf_estimate(p);
  // One Halley step on cdf(x) - p brings the estimate to full precision.
  const double e = std_normal_cdf(x) - p;
  const double u = e * kSqrt2Pi * std::exp(0.5 * x * x);
  x -= u / (1.0 + 0.5 * x * u);
  return x;
}

ZGrid quantile_z_grid(int n) {
  if (n < 1) {
    throw std::domain_error("quantile_z_grid: n must be >= 1");
  }
  ZGrid grid;
  grid.n = n;
  grid.z.assign(static_cast<std::size_t>(n), 0.0);
  // Fill the lower half and mirror it so antisymmetry is exact; the middle
  // entry of an odd grid stays exactly 0.
  for (int i = 0; i < n / 2; ++i) {
    const double p = static_cast<double>(i + 1) / static_cast<double>(n + 1);
    const double z = std_normal_inv_cdf(p);
    grid.z[static_cast<std::size_t>(i)] = z;
    grid.z[static_cast<std::size_t>(n - 1 - i)] = -z;
  }
  return grid;
}

}  // namespace mcclt
