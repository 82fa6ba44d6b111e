#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "mcclt/net.hpp"

namespace mcclt {

// Quantile regression fits u = target - pred so bar i is pulled toward the
// tau_i quantile; kLiteral flips the argument order, which mirrors the
// asymmetry and makes the bars approximate the 1 - tau quantiles instead.
// Kept selectable for side-by-side comparison.
enum class QuantileLossSign { kTargetMinusPred, kLiteral };

// State -> N quantile bars of the return distribution. The network output is
// not order-constrained; downstream consumers must tolerate disorder.
struct QuantileValueFunction {
  Mlp net;
  int n_quantiles = 0;
  double kappa = 1.0;
  mutable std::uint64_t predict_count = 0;  // instrumentation
  std::uint64_t fit_count = 0;

  static QuantileValueFunction init(int state_dim,
                                    const std::vector<int>& hidden,
                                    int n_quantiles, double kappa, Rng& rng);
};

std::vector<double> predict_quantiles(const QuantileValueFunction& vf,
                                      const Eigen::VectorXd& state);
// states: state_dim x B -> N x B.
Eigen::MatrixXd predict_quantiles_batch(const QuantileValueFunction& vf,
                                        const Eigen::MatrixXd& states);
double mean_value(const QuantileValueFunction& vf,
                  const Eigen::VectorXd& state);

// Huber penalty: quadratic inside |u| < kappa, linear outside.
double huber(double u, double kappa);
// d huber / d u.
double huber_grad(double u, double kappa);

// Mean over bars of |tau_i - 1{u_i < 0}| * huber(u_i) with
// tau_i = (i+1)/(N+1). Zero iff pred == target.
double quantile_huber_loss(
    const std::vector<double>& pred, const std::vector<double>& target,
    double kappa, QuantileLossSign sign = QuantileLossSign::kTargetMinusPred);

// One optimizer step on the batched quantile Huber loss. states: state_dim x
// B, targets: N x B. Returns the pre-update loss.
double fit_quantiles(
    QuantileValueFunction& vf, const Eigen::MatrixXd& states,
    const Eigen::MatrixXd& targets, AdamState& opt,
    QuantileLossSign sign = QuantileLossSign::kTargetMinusPred);

// Loss and gradient with respect to the predictions (N x B), exposed so the
// trainer and the tests share one implementation.
double quantile_huber_loss_batch(const Eigen::MatrixXd& pred,
                                 const Eigen::MatrixXd& target, double kappa,
                                 QuantileLossSign sign,
                                 Eigen::MatrixXd* grad_pred);

// Scalar critic for the baseline variant.
struct ScalarValueFunction {
  Mlp net;

  static ScalarValueFunction init(int state_dim, const std::vector<int>& hidden,
                                  Rng& rng);
};

double predict_value(const ScalarValueFunction& vf,
                     const Eigen::VectorXd& state);
Eigen::VectorXd predict_value_batch(const ScalarValueFunction& vf,
                                    const Eigen::MatrixXd& states);

// One MSE regression step; returns the pre-update loss.
double fit_scalar(ScalarValueFunction& vf, const Eigen::MatrixXd& states,
                  const Eigen::VectorXd& targets, AdamState& opt);

}  // namespace mcclt
