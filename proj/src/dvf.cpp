#include "mcclt/dvf.hpp"

#include <cmath>
#include <stdexcept>

namespace mcclt {

QuantileValueFunction QuantileValueFunction::init(
    int state_dim, const std::vector<int>& hidden, int n_quantiles,
    double kappa, Rng& rng) {
  if (n_quantiles < 1) {
    throw std::invalid_argument("QuantileValueFunction: n_quantiles >= 1");
  }
  if (kappa <= 0.0) {
    throw std::invalid_argument("QuantileValueFunction: kappa must be > 0");
  }
  std::vector<int> dims;
  dims.push_back(state_dim);
  dims.insert(dims.end(), hidden.begin(), hidden.end());
  dims.push_back(n_quantiles);
  QuantileValueFunction vf;
  vf.net = Mlp::init(dims, Activation::kRelu, rng);
  vf.n_quantiles = n_quantiles;
  vf.kappa = kappa;
  return vf;
}

std::vector<double> predict_quantiles(const QuantileValueFunction& vf,
                                      const Eigen::VectorXd& state) {
  vf.predict_count += 1;
  const Eigen::VectorXd out = forward(vf.net, state);
  return {out.data(), out.data() + out.size()};
}

Eigen::MatrixXd predict_quantiles_batch(const QuantileValueFunction& vf,
                                        const Eigen::MatrixXd& states) {
  vf.predict_count += static_cast<std::uint64_t>(states.cols());
  return forward_batch(vf.net, states);
}

double mean_value(const QuantileValueFunction& vf,
                  const Eigen::VectorXd& state) {
  vf.predict_count += 1;
  return forward(vf.net, state).mean();
}

double huber(double u, double kappa) {
  const double au = std::abs(u);
  if (au < kappa) return 0.5 * u * u;
  return kappa * (au - 0.5 * kappa);
}

double huber_grad(double u, double kappa) {
  if (u > kappa) return kappa;
  if (u < -kappa) return -kappa;
  return u;
}

double quantile_huber_loss(const std::vector<double>& pred,
                           const std::vector<double>& target, double kappa,
                           QuantileLossSign sign) {
  if (pred.size() != target.size()) {
    throw std::invalid_argument("quantile_huber_loss: length mismatch");
  }
  if (pred.empty()) {
    throw std::invalid_argument("quantile_huber_loss: empty input");
  }
  const std::size_t n = pred.size();
  double loss = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double tau =
        static_cast<double>(i + 1) / static_cast<double>(n + 1);
    const double u = sign == QuantileLossSign::kTargetMinusPred
                         ? target[i] - pred[i]
                         : pred[i] - target[i];
    const double asym = std::abs(tau - (u < 0.0 ? 1.0 : 0.0));
    loss += asym * huber(u, kappa);
  }
  return loss / static_cast<double>(n);
}

double quantile_huber_loss_batch(const Eigen::MatrixXd& pred,
                                 const Eigen::MatrixXd& target, double kappa,
                                 QuantileLossSign sign,
                                 Eigen::MatrixXd* grad_pred) {
  if (pred.rows() != target.rows() || pred.cols() != target.cols()) {
    throw std::invalid_argument("quantile_huber_loss_batch: shape mismatch");
  }
  if (pred.size() == 0) {
    throw std::invalid_argument("quantile_huber_loss_batch: empty batch");
  }
  const Eigen::Index n = pred.rows();
  const Eigen::Index batch = pred.cols();
  const double flip = sign == QuantileLossSign::kTargetMinusPred ? 1.0 : -1.0;
  const double scale = 1.0 / static_cast<double>(n * batch);
  if (grad_pred) grad_pred->setZero(n, batch);
  double loss = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    const double tau =
        static_cast<double>(i + 1) / static_cast<double>(n + 1);
    for (Eigen::Index b = 0; b < batch; ++b) {
      const double u = flip * (target(i, b) - pred(i, b));
      const double asym = std::abs(tau - (u < 0.0 ? 1.0 : 0.0));
      loss += asym * huber(u, kappa);
      if (grad_pred) {
        (*grad_pred)(i, b) = -flip * asym * huber_grad(u, kappa) * scale;
      }
    }
  }
  return loss * scale;
}

double fit_quantiles(QuantileValueFunction& vf, const Eigen::MatrixXd& states,
                     const Eigen::MatrixXd& targets, AdamState& opt,
                     QuantileLossSign sign) {
  if (states.cols() == 0) {
    throw std::invalid_argument("fit_quantiles: empty batch");
  }
  if (targets.rows() != vf.n_quantiles || targets.cols() != states.cols()) {
    throw std::invalid_argument("fit_quantiles: target shape mismatch");
  }
  vf.fit_count += 1;
  ForwardCache cache;
  const Eigen::MatrixXd pred = forward_batch(vf.net, states, cache);
  Eigen::MatrixXd grad_pred;
  const double loss =
      quantile_huber_loss_batch(pred, targets, vf.kappa, sign, &grad_pred);
  MlpGrads grads = MlpGrads::zeros_like(vf.net);
  backward_batch(vf.net, cache, grad_pred, grads);
  adam_step(vf.net, grads, opt);
  return loss;
}

ScalarValueFunction ScalarValueFunction::init(int state_dim,
                                              const std::vector<int>& hidden,
                                              Rng& rng) {
  std::vector<int> dims;
  dims.push_back(state_dim);
  dims.insert(dims.end(), hidden.begin(), hidden.end());
  dims.push_back(1);
  ScalarValueFunction vf;
  vf.net = Mlp::init(dims, Activation::kRelu, rng);
  return vf;
}

double predict_value(const ScalarValueFunction& vf,
                     const Eigen::VectorXd& state) {
  return forward(vf.net, state)(0);
}

Eigen::VectorXd predict_value_batch(const ScalarValueFunction& vf,
                                    const Eigen::MatrixXd& states) {
  return forward_batch(vf.net, states).row(0).transpose();
}

double fit_scalar(ScalarValueFunction& vf, const Eigen::MatrixXd& states,
                  const Eigen::VectorXd& targets, AdamState& opt) {
  if (states.cols() == 0) {
    throw std::invalid_argument("fit_scalar: empty batch");
  }
  if (targets.size() != states.cols()) {
    throw std::invalid_argument("fit_scalar: target length mismatch");
  }
  ForwardCache cache;
  const Eigen::MatrixXd pred = forward_batch(vf.net, states, cache);
  const Eigen::ArrayXd diff =
      pred.row(0).transpose().array() - targets.array();
  const double loss = diff.square().mean();
  Eigen::MatrixXd grad_pred =
      (2.0 / static_cast<double>(states.cols())) * diff.matrix().transpose();
  MlpGrads grads = MlpGrads::zeros_like(vf.net);
  backward_batch(vf.net, cache, grad_pred, grads);
  adam_step(vf.net, grads, opt);
  return loss;
}

}  // namespace mcclt
