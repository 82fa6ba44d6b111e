#include "mcclt/envs.hpp"

#include <cmath>
#include <stdexcept>

namespace mcclt {

Eigen::VectorXd Env::reset(std::uint64_t seed) {
  rng_ = Rng(seed, /*stream=*/0x656e76);
  return reset();
}

Eigen::VectorXd Env::reset() {
  state_ = sample_initial(rng_);
  step_count_ = 0;
  needs_reset_ = false;
  return state_;
}

StepResult Env::step(const Eigen::VectorXd& action) {
  if (needs_reset_) {
    throw std::logic_error("Env::step: episode over, call reset() first");
  }
  if (action.size() != spec_.action_dim) {
    throw std::invalid_argument("Env::step: action dimension mismatch");
  }
  const Eigen::VectorXd clipped =
      action.cwiseMax(spec_.action_low).cwiseMin(spec_.action_high);
  auto [next_state, reward] = dynamics(state_, clipped, rng_);
  step_count_ += 1;
  StepResult result;
  result.reward = reward;
  result.done = is_terminal(next_state);
  result.truncated = !result.done && step_count_ >= spec_.max_episode_steps;
  result.next_state = next_state;
  state_ = std::move(next_state);
  if (result.done || result.truncated) needs_reset_ = true;
  return result;
}

namespace {

double get_param(const EnvOverrides& o, const std::string& key,
                 double fallback) {
  auto it = o.params.find(key);
  return it == o.params.end() ? fallback : it->second;
}

// 2D double integrator driven toward a goal. Dense negative distance reward
// plus a small action cost; terminates early once the goal is reached.
class PointMassReachEnv final : public Env {
 public:
  explicit PointMassReachEnv(const EnvOverrides& o)
      : Env(make_spec(o)),
        goal_(Eigen::Vector2d(get_param(o, "goal_x", 1.0),
                              get_param(o, "goal_y", 1.0))),
        start_(Eigen::Vector2d(get_param(o, "start_x", 0.0),
                               get_param(o, "start_y", 0.0))),
        goal_radius_(get_param(o, "goal_radius", 0.05)) {}

 private:
  static EnvSpec make_spec(const EnvOverrides& o) {
    EnvSpec spec;
    spec.name = "point_mass_reach";
    spec.state_dim = 4;  // px, py, vx, vy
    spec.action_dim = 2;
    spec.action_low = -1.0;
    spec.action_high = 1.0;
    spec.max_episode_steps = o.max_episode_steps.value_or(100);
    spec.noise_scale = o.noise_scale.value_or(0.5);
    return spec;
  }

  Eigen::VectorXd sample_initial(Rng& rng) override {
    Eigen::VectorXd s(4);
    s(0) = start_(0) + 0.1 * spec_.noise_scale * rng.gauss();
    s(1) = start_(1) + 0.1 * spec_.noise_scale * rng.gauss();
    s(2) = 0.05 * spec_.noise_scale * rng.gauss();
    s(3) = 0.05 * spec_.noise_scale * rng.gauss();
    return s;
  }

  std::pair<Eigen::VectorXd, double> dynamics(const Eigen::VectorXd& s,
                                              const Eigen::VectorXd& a,
                                              Rng& rng) override {
    constexpr double dt = 0.1;
    Eigen::VectorXd next(4);
    next(2) = s(2) + dt * (a(0) + spec_.noise_scale * rng.gauss());
    next(3) = s(3) + dt * (a(1) + spec_.noise_scale * rng.gauss());
    next(0) = s(0) + dt * next(2);
    next(1) = s(1) + dt * next(3);
    const double dist = (next.head<2>() - goal_).norm();
    const double reward = -dist - 0.01 * a.squaredNorm();
    return {next, reward};
  }

  bool is_terminal(const Eigen::VectorXd& next_state) const override {
    return (next_state.head<2>() - goal_).norm() < goal_radius_;
  }

  Eigen::Vector2d goal_;
  Eigen::Vector2d start_;
  double goal_radius_;
};

// Torque-noised swing-up pendulum, gym-flavored dynamics. State is
// (cos theta, sin theta, theta_dot); reward penalizes angle from upright,
// angular velocity, and torque. Episodes end only at the time limit.
class NoisyPendulumEnv final : public Env {
 public:
  explicit NoisyPendulumEnv(const EnvOverrides& o) : Env(make_spec(o)) {}

 private:
  static EnvSpec make_spec(const EnvOverrides& o) {
    EnvSpec spec;
    spec.name = "noisy_pendulum";
    spec.state_dim = 3;
    spec.action_dim = 1;
    spec.action_low = -2.0;
    spec.action_high = 2.0;
    spec.max_episode_steps = o.max_episode_steps.value_or(200);
    spec.noise_scale = o.noise_scale.value_or(1.0);
    return spec;
  }

  static double wrap_angle(double theta) {
    theta = std::fmod(theta + M_PI, 2.0 * M_PI);
    if (theta < 0.0) theta += 2.0 * M_PI;
    return theta - M_PI;
  }

  Eigen::VectorXd make_state() const {
    Eigen::VectorXd s(3);
    s(0) = std::cos(theta_);
    s(1) = std::sin(theta_);
    s(2) = theta_dot_;
    return s;
  }

  Eigen::VectorXd sample_initial(Rng& rng) override {
    // Nominal start hangs straight down; the noise scale widens the draw.
    theta_ = wrap_angle(M_PI + spec_.noise_scale * rng.uniform(-M_PI, M_PI));
    theta_dot_ = spec_.noise_scale * rng.uniform(-1.0, 1.0);
    return make_state();
  }

  std::pair<Eigen::VectorXd, double> dynamics(const Eigen::VectorXd&,
                                              const Eigen::VectorXd& a,
                                              Rng& rng) override {
    constexpr double dt = 0.05;
    constexpr double g = 10.0;
    const double torque = a(0) + 0.1 * spec_.noise_scale * rng.gauss();
    const double angle = wrap_angle(theta_);
    const double cost =
        angle * angle + 0.1 * theta_dot_ * theta_dot_ + 0.001 * a(0) * a(0);
    theta_dot_ += dt * (1.5 * g * std::sin(theta_) + 3.0 * torque);
    theta_dot_ = std::clamp(theta_dot_, -8.0, 8.0);
    theta_ += dt * theta_dot_;
    return {make_state(), -cost};
  }

  double theta_ = 0.0;
  double theta_dot_ = 0.0;
};

// Two-state linear chain with quadratic cost: the control feeds the second
// coordinate, which feeds the first. Starts tightly at the origin and
// disperses toward its stationary cloud, so visited states correlate with the
// episode timestep.
class LqChainEnv final : public Env {
 public:
  explicit LqChainEnv(const EnvOverrides& o)
      : Env(make_spec(o)),
        decay_(get_param(o, "decay", 0.98)),
        coupling_(get_param(o, "coupling", 0.1)),
        control_gain_(get_param(o, "control_gain", 0.2)),
        process_noise_(get_param(o, "process_noise", 0.1)) {}

 private:
  static EnvSpec make_spec(const EnvOverrides& o) {
    EnvSpec spec;
    spec.name = "lq_chain";
    spec.state_dim = 2;
    spec.action_dim = 1;
    spec.action_low = -1.0;
    spec.action_high = 1.0;
    spec.max_episode_steps = o.max_episode_steps.value_or(150);
    spec.noise_scale = o.noise_scale.value_or(1.0);
    return spec;
  }

  Eigen::VectorXd sample_initial(Rng& rng) override {
    Eigen::VectorXd s(2);
    s(0) = 0.01 * spec_.noise_scale * rng.gauss();
    s(1) = 0.01 * spec_.noise_scale * rng.gauss();
    return s;
  }

  std::pair<Eigen::VectorXd, double> dynamics(const Eigen::VectorXd& s,
                                              const Eigen::VectorXd& a,
                                              Rng& rng) override {
    const double w = spec_.noise_scale * process_noise_;
    Eigen::VectorXd next(2);
    next(0) = decay_ * s(0) + coupling_ * s(1) + w * rng.gauss();
    next(1) = decay_ * s(1) + control_gain_ * a(0) + w * rng.gauss();
    const double cost =
        next(0) * next(0) + next(1) * next(1) + 0.1 * a(0) * a(0);
    return {next, -cost};
  }

  double decay_;
  double coupling_;
  double control_gain_;
  double process_noise_;
};

}  // namespace

std::unique_ptr<Env> make_env(const std::string& name,
                              const EnvOverrides& overrides) {
  if (name == "point_mass_reach") {
    return std::make_unique<PointMassReachEnv>(overrides);
  }
  if (name == "noisy_pendulum") {
    return std::make_unique<NoisyPendulumEnv>(overrides);
  }
  if (name == "lq_chain") {
    return std::make_unique<LqChainEnv>(overrides);
  }
  throw std::invalid_argument("unknown environment: " + name);
}

std::vector<std::string> env_names() {
  return {"point_mass_reach", "noisy_pendulum", "lq_chain"};
}

}  // namespace mcclt
