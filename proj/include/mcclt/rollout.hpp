#pragma once

#include <Eigen/Dense>
#include <functional>
#include <iosfwd>
#include <vector>

#include "mcclt/envs.hpp"
#include "mcclt/policy.hpp"
#include "mcclt/rng.hpp"

namespace mcclt {

struct Transition {
  int t = 0;  // env timestep within the episode, 0-based
  Eigen::VectorXd state;
  Eigen::VectorXd action;
  double log_prob = 0.0;
  double reward = 0.0;
  bool done = false;
  bool truncated = false;
  std::vector<double> quantiles;  // empty when no quantile critic is in play
  double w = 1.0;
  double value = 0.0;
  // Filled by finalize():
  double advantage = 0.0;
  double ret_discounted = 0.0;
  double ret_undiscounted = 0.0;
};

struct PathInfo {
  int start = 0;
  int length = 0;
  bool ended_terminal = false;
  bool ended_truncated = false;  // neither flag: cut off by the buffer
  double bootstrap_value = 0.0;
  Eigen::VectorXd tail_next_state;
};

struct EpisodeSummary {
  int length = 0;
  double episode_return = 0.0;
};

// Fixed-capacity on-policy buffer; transitions of one path are contiguous.
class TrajectoryBuffer {
 public:
  explicit TrajectoryBuffer(int capacity);

  void add(Transition tr);
  void close_path(bool terminal, bool truncated, double bootstrap_value,
                  Eigen::VectorXd tail_next_state);

  // Computes per-path GAE advantages plus discounted and undiscounted
  // returns-to-go. May be called exactly once per fill.
  void finalize(double gamma, double lambda);

  bool full() const { return size() == capacity_; }
  bool finalized() const { return finalized_; }
  int capacity() const { return capacity_; }
  int size() const { return static_cast<int>(transitions_.size()); }

  std::vector<Transition>& transitions() { return transitions_; }
  const std::vector<Transition>& transitions() const { return transitions_; }
  const std::vector<PathInfo>& paths() const { return paths_; }

  void clear();

 private:
  int capacity_;
  std::vector<Transition> transitions_;
  std::vector<PathInfo> paths_;
  int open_path_start_ = 0;
  bool finalized_ = false;
};

// Callbacks the trainer wires per ablation mode.
struct CollectHooks {
  // Quantile bars for a state; unset when no quantile critic exists.
  std::function<std::vector<double>(const Eigen::VectorXd&)> quantiles;
  // Value estimate used for bootstrapping (scalar critic or bar mean).
  std::function<double(const Eigen::VectorXd&)> value;
  // Per-step policy-update weight computed from the collected bars; unset
  // means w = 1.
  std::function<double(const std::vector<double>&)> weight;
};

// Runs the policy until the buffer holds exactly its capacity in transitions.
// Episodes finishing mid-collection reset the env and restart t at 0; the
// final partial path is closed with a value bootstrap. Returns the completed
// episodes' (length, return) pairs.
std::vector<EpisodeSummary> collect(Env& env, const GaussianPolicy& policy,
                                    const CollectHooks& hooks,
                                    TrajectoryBuffer& buffer, Rng& action_rng);

// One transition per line, for offline inspection.
void dump_jsonl(const TrajectoryBuffer& buffer, std::ostream& out);

}  // namespace mcclt
