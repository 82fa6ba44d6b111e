#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "mcclt/net.hpp"

namespace mcclt {

// Diagonal Gaussian policy: a tanh trunk maps state to the action mean; the
// log standard deviations are free state-independent parameters.
struct GaussianPolicy {
  Mlp trunk;
  Eigen::VectorXd log_std;

  static GaussianPolicy init(int state_dim, const std::vector<int>& hidden,
                             int action_dim, Rng& rng,
                             double log_std_init = -0.5);

  int state_dim() const { return trunk.input_dim(); }
  int action_dim() const { return trunk.output_dim(); }
  Eigen::VectorXd std() const { return log_std.array().exp(); }
};

struct ActionSample {
  Eigen::VectorXd action;
  double log_prob;
};

ActionSample sample_action(const GaussianPolicy& policy,
                           const Eigen::VectorXd& state, Rng& rng);

double log_prob(const GaussianPolicy& policy, const Eigen::VectorXd& state,
                const Eigen::VectorXd& action);

// Per-sample log densities given precomputed means (action_dim x B).
Eigen::VectorXd log_prob_from_means(const Eigen::MatrixXd& means,
                                    const Eigen::VectorXd& log_std,
                                    const Eigen::MatrixXd& actions);

// Closed-form diagonal Gaussian KL(old || new) averaged over states.
double mean_kl(const GaussianPolicy& old_policy,
               const GaussianPolicy& new_policy,
               const Eigen::MatrixXd& states);

// Flat parameter vector in a fixed order (trunk weights/biases per layer,
// then log_std); used by the trust-region update.
Eigen::VectorXd flatten_params(const GaussianPolicy& policy);
void set_params_from_flat(GaussianPolicy& policy, const Eigen::VectorXd& flat);
Eigen::Index param_count(const GaussianPolicy& policy);
Eigen::VectorXd flatten_grads(const GaussianPolicy& policy,
                              const MlpGrads& trunk_grads,
                              const Eigen::VectorXd& log_std_grad);
void unflatten_grads(const GaussianPolicy& policy, const Eigen::VectorXd& flat,
                     MlpGrads& trunk_grads, Eigen::VectorXd& log_std_grad);

void save_policy_file(const std::string& path, const GaussianPolicy& policy);
GaussianPolicy load_policy_file(const std::string& path);

}  // namespace mcclt
