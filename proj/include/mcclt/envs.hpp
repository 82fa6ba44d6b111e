#pragma once

#include <Eigen/Dense>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "mcclt/rng.hpp"

namespace mcclt {

struct EnvSpec {
  std::string name;
  int state_dim = 0;
  int action_dim = 0;
  double action_low = -1.0;
  double action_high = 1.0;
  int max_episode_steps = 100;
  double noise_scale = 1.0;
};

struct StepResult {
  Eigen::VectorXd next_state;
  double reward = 0.0;
  bool done = false;       // true termination; bootstrap 0
  bool truncated = false;  // time limit; bootstrap the value estimate
};

// Small stochastic continuous-control tasks with dense rewards. One owner per
// instance; actions are clipped to the bounds inside step().
class Env {
 public:
  virtual ~Env() = default;

  const EnvSpec& spec() const { return spec_; }

  // Reseeds the internal stream and starts a fresh episode.
  Eigen::VectorXd reset(std::uint64_t seed);
  // Starts a fresh episode continuing the current stream.
  Eigen::VectorXd reset();

  StepResult step(const Eigen::VectorXd& action);

  const Eigen::VectorXd& state() const { return state_; }
  int step_count() const { return step_count_; }

 protected:
  explicit Env(EnvSpec spec) : spec_(std::move(spec)), rng_(0) {}

  virtual Eigen::VectorXd sample_initial(Rng& rng) = 0;
  // Advances one step; returns (next_state, reward).
  virtual std::pair<Eigen::VectorXd, double> dynamics(
      const Eigen::VectorXd& state, const Eigen::VectorXd& action,
      Rng& rng) = 0;
  virtual bool is_terminal(const Eigen::VectorXd& next_state) const {
    (void)next_state;
    return false;
  }

  EnvSpec spec_;

 private:
  Rng rng_;
  Eigen::VectorXd state_;
  int step_count_ = 0;
  bool needs_reset_ = true;
};

struct EnvOverrides {
  std::optional<int> max_episode_steps;
  std::optional<double> noise_scale;
  std::map<std::string, double> params;  // env-specific, see env_param_names
};

// Built-in environments: point_mass_reach, noisy_pendulum, lq_chain.
std::unique_ptr<Env> make_env(const std::string& name,
                              const EnvOverrides& overrides = {});
std::vector<std::string> env_names();

}  // namespace mcclt
