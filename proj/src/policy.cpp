#include "mcclt/policy.hpp"

#include <cmath>
#include <stdexcept>

namespace mcclt {

namespace {
constexpr double kLog2Pi = 1.8378770664093454835606594728112;
}

GaussianPolicy GaussianPolicy::init(int state_dim,
                                    const std::vector<int>& hidden,
                                    int action_dim, Rng& rng,
                                    double log_std_init) {
  std::vector<int> dims;
  dims.push_back(state_dim);
  dims.insert(dims.end(), hidden.begin(), hidden.end());
  dims.push_back(action_dim);
  GaussianPolicy policy;
  policy.trunk = Mlp::init(dims, Activation::kTanh, rng);
  policy.log_std = Eigen::VectorXd::Constant(action_dim, log_std_init);
  return policy;
}

ActionSample sample_action(const GaussianPolicy& policy,
                           const Eigen::VectorXd& state, Rng& rng) {
  const Eigen::VectorXd mean = forward(policy.trunk, state);
  const Eigen::VectorXd std = policy.std();
  Eigen::VectorXd action(mean.size());
  for (Eigen::Index d = 0; d < mean.size(); ++d) {
    action(d) = mean(d) + std(d) * rng.gauss();
  }
  ActionSample sample;
  sample.log_prob = log_prob_from_means(mean, policy.log_std, action)(0);
  sample.action = std::move(action);
  return sample;
}

double log_prob(const GaussianPolicy& policy, const Eigen::VectorXd& state,
                const Eigen::VectorXd& action) {
  if (action.size() != policy.action_dim()) {
    throw std::invalid_argument("log_prob: action dimension mismatch");
  }
  const Eigen::VectorXd mean = forward(policy.trunk, state);
  return log_prob_from_means(mean, policy.log_std, action)(0);
}

Eigen::VectorXd log_prob_from_means(const Eigen::MatrixXd& means,
                                    const Eigen::VectorXd& log_std,
                                    const Eigen::MatrixXd& actions) {
  if (means.rows() != log_std.size() || actions.rows() != means.rows() ||
      actions.cols() != means.cols()) {
    throw std::invalid_argument("log_prob_from_means: shape mismatch");
  }
  const Eigen::ArrayXd inv_std = (-log_std.array()).exp();
  const Eigen::ArrayXXd z =
      (actions - means).array().colwise() * inv_std;
  const double const_term =
      -log_std.sum() -
      0.5 * kLog2Pi * static_cast<double>(log_std.size());
  return (-0.5 * z.square().colwise().sum() + const_term).transpose();
}

double mean_kl(const GaussianPolicy& old_policy,
               const GaussianPolicy& new_policy,
               const Eigen::MatrixXd& states) {
  if (states.cols() == 0) {
    throw std::invalid_argument("mean_kl: empty state batch");
  }
  if (old_policy.action_dim() != new_policy.action_dim()) {
    throw std::invalid_argument("mean_kl: action dimension mismatch");
  }
  const Eigen::MatrixXd mean_old = forward_batch(old_policy.trunk, states);
  const Eigen::MatrixXd mean_new = forward_batch(new_policy.trunk, states);
  const Eigen::ArrayXd var_old = (2.0 * old_policy.log_std.array()).exp();
  const Eigen::ArrayXd inv_var_new = (-2.0 * new_policy.log_std.array()).exp();
  const double log_std_term =
      (new_policy.log_std - old_policy.log_std).sum();
  const Eigen::ArrayXXd mean_diff_sq = (mean_new - mean_old).array().square();
  // KL = sum_d [ log(s2/s1) + (s1^2 + (m1 - m2)^2) / (2 s2^2) - 1/2 ]
  const Eigen::ArrayXd per_state =
      ((mean_diff_sq.colwise() + var_old).colwise() * inv_var_new)
          .colwise()
          .sum()
          .transpose();
  const double d = static_cast<double>(old_policy.action_dim());
  return log_std_term + 0.5 * per_state.mean() - 0.5 * d;
}

Eigen::Index param_count(const GaussianPolicy& policy) {
  Eigen::Index n = 0;
  for (std::size_t l = 0; l < policy.trunk.layer_count(); ++l) {
    n += policy.trunk.weights[l].size() + policy.trunk.biases[l].size();
  }
  return n + policy.log_std.size();
}

Eigen::VectorXd flatten_params(const GaussianPolicy& policy) {
  Eigen::VectorXd flat(param_count(policy));
  Eigen::Index at = 0;
  for (std::size_t l = 0; l < policy.trunk.layer_count(); ++l) {
    const auto& w = policy.trunk.weights[l];
    flat.segment(at, w.size()) = Eigen::Map<const Eigen::VectorXd>(
        w.data(), w.size());
    at += w.size();
    flat.segment(at, policy.trunk.biases[l].size()) = policy.trunk.biases[l];
    at += policy.trunk.biases[l].size();
  }
  flat.segment(at, policy.log_std.size()) = policy.log_std;
  return flat;
}

void set_params_from_flat(GaussianPolicy& policy,
                          const Eigen::VectorXd& flat) {
  if (flat.size() != param_count(policy)) {
    throw std::invalid_argument("set_params_from_flat: size mismatch");
  }
  Eigen::Index at = 0;
  for (std::size_t l = 0; l < policy.trunk.layer_count(); ++l) {
    auto& w = policy.trunk.weights[l];
    Eigen::Map<Eigen::VectorXd>(w.data(), w.size()) =
        flat.segment(at, w.size());
    at += w.size();
    policy.trunk.biases[l] = flat.segment(at, policy.trunk.biases[l].size());
    at += policy.trunk.biases[l].size();
  }
  policy.log_std = flat.segment(at, policy.log_std.size());
}

Eigen::VectorXd flatten_grads(const GaussianPolicy& policy,
                              const MlpGrads& trunk_grads,
                              const Eigen::VectorXd& log_std_grad) {
  Eigen::VectorXd flat(param_count(policy));
  Eigen::Index at = 0;
  for (std::size_t l = 0; l < policy.trunk.layer_count(); ++l) {
    const auto& w = trunk_grads.weights[l];
    flat.segment(at, w.size()) =
        Eigen::Map<const Eigen::VectorXd>(w.data(), w.size());
    at += w.size();
    flat.segment(at, trunk_grads.biases[l].size()) = trunk_grads.biases[l];
    at += trunk_grads.biases[l].size();
  }
  flat.segment(at, log_std_grad.size()) = log_std_grad;
  return flat;
}

void unflatten_grads(const GaussianPolicy& policy, const Eigen::VectorXd& flat,
                     MlpGrads& trunk_grads, Eigen::VectorXd& log_std_grad) {
  if (flat.size() != param_count(policy)) {
    throw std::invalid_argument("unflatten_grads: size mismatch");
  }
  Eigen::Index at = 0;
  trunk_grads = MlpGrads::zeros_like(policy.trunk);
  for (std::size_t l = 0; l < policy.trunk.layer_count(); ++l) {
    auto& w = trunk_grads.weights[l];
    Eigen::Map<Eigen::VectorXd>(w.data(), w.size()) =
        flat.segment(at, w.size());
    at += w.size();
    trunk_grads.biases[l] = flat.segment(at, trunk_grads.biases[l].size());
    at += trunk_grads.biases[l].size();
  }
  log_std_grad = flat.segment(at, policy.log_std.size());
}

void save_policy_file(const std::string& path, const GaussianPolicy& policy) {
  save_mlp_file(path, policy.trunk, {{"log_std", policy.log_std}});
}

GaussianPolicy load_policy_file(const std::string& path) {
  std::vector<NamedVector> extras;
  GaussianPolicy policy;
  policy.trunk = load_mlp_file(path, &extras);
  bool found = false;
  for (const auto& nv : extras) {
    if (nv.name == "log_std") {
      policy.log_std = nv.value;
      found = true;
    }
  }
  if (!found || policy.log_std.size() != policy.trunk.output_dim()) {
    throw std::runtime_error("policy checkpoint: missing or bad log_std");
  }
  return policy;
}

}  // namespace mcclt
