#include "mcclt/rollout.hpp"

#include <numeric>
#include <ostream>
#include <stdexcept>

#include <json.hpp>

#include "mcclt/advantage.hpp"

namespace mcclt {

TrajectoryBuffer::TrajectoryBuffer(int capacity) : capacity_(capacity) {
  if (capacity < 1) {
    throw std::invalid_argument("TrajectoryBuffer: capacity must be >= 1");
  }
  transitions_.reserve(static_cast<std::size_t>(capacity));
}

void TrajectoryBuffer::add(Transition tr) {
  if (full()) throw std::logic_error("TrajectoryBuffer: buffer full");
  if (finalized_) throw std::logic_error("TrajectoryBuffer: already finalized");
  transitions_.push_back(std::move(tr));
}

void TrajectoryBuffer::close_path(bool terminal, bool truncated,
                                  double bootstrap_value,
                                  Eigen::VectorXd tail_next_state) {
  const int end = size();
  if (end == open_path_start_) {
    throw std::logic_error("TrajectoryBuffer: closing an empty path");
  }
  PathInfo path;
  path.start = open_path_start_;
  path.length = end - open_path_start_;
  path.ended_terminal = terminal;
  path.ended_truncated = truncated;
  path.bootstrap_value = terminal ? 0.0 : bootstrap_value;
  path.tail_next_state = std::move(tail_next_state);
  paths_.push_back(std::move(path));
  open_path_start_ = end;
}

void TrajectoryBuffer::finalize(double gamma, double lambda) {
  if (finalized_) throw std::logic_error("TrajectoryBuffer: finalize twice");
  if (open_path_start_ != size()) {
    throw std::logic_error("TrajectoryBuffer: finalize with an open path");
  }
  for (const PathInfo& path : paths_) {
    std::vector<double> rewards(static_cast<std::size_t>(path.length));
    std::vector<double> values(static_cast<std::size_t>(path.length) + 1);
    for (int i = 0; i < path.length; ++i) {
      const Transition& tr = transitions_[path.start + i];
      rewards[i] = tr.reward;
      values[i] = tr.value;
    }
    values.back() = path.bootstrap_value;
    const PathEstimates est = gae(rewards, values, gamma, lambda);
    const std::vector<double> rtg =
        undiscounted_returns_to_go(rewards, path.bootstrap_value);
    for (int i = 0; i < path.length; ++i) {
      Transition& tr = transitions_[path.start + i];
      tr.advantage = est.advantages[i];
      tr.ret_discounted = est.returns_to_go[i];
      tr.ret_undiscounted = rtg[i];
    }
  }
  finalized_ = true;
}

void TrajectoryBuffer::clear() {
  transitions_.clear();
  paths_.clear();
  open_path_start_ = 0;
  finalized_ = false;
}

std::vector<EpisodeSummary> collect(Env& env, const GaussianPolicy& policy,
                                    const CollectHooks& hooks,
                                    TrajectoryBuffer& buffer,
                                    Rng& action_rng) {
  if (buffer.size() != 0) {
    throw std::logic_error("collect: buffer must be empty");
  }
  std::vector<EpisodeSummary> episodes;
  Eigen::VectorXd state = env.state();
  int t = env.step_count();
  double episode_return = 0.0;
  while (!buffer.full()) {
    Transition tr;
    tr.t = t;
    tr.state = state;
    ActionSample sample = sample_action(policy, state, action_rng);
    tr.action = std::move(sample.action);
    tr.log_prob = sample.log_prob;
    if (hooks.quantiles) {
      tr.quantiles = hooks.quantiles(state);
      double sum = 0.0;
      for (double q : tr.quantiles) sum += q;
      tr.value = sum / static_cast<double>(tr.quantiles.size());
      if (hooks.weight) tr.w = hooks.weight(tr.quantiles);
    } else {
      tr.value = hooks.value(state);
    }
    const StepResult sr = env.step(tr.action);
    tr.reward = sr.reward;
    tr.done = sr.done;
    tr.truncated = sr.truncated;
    episode_return += sr.reward;
    buffer.add(std::move(tr));

    if (sr.done || sr.truncated) {
      episodes.push_back({t + 1, episode_return});
      const double bootstrap = sr.done ? 0.0 : hooks.value(sr.next_state);
      buffer.close_path(sr.done, sr.truncated, bootstrap, sr.next_state);
      state = env.reset();
      t = 0;
      episode_return = 0.0;
    } else {
      state = sr.next_state;
      t += 1;
      if (buffer.full()) {
        buffer.close_path(false, false, hooks.value(state), state);
      }
    }
  }
  return episodes;
}

void dump_jsonl(const TrajectoryBuffer& buffer, std::ostream& out) {
  for (const Transition& tr : buffer.transitions()) {
    nlohmann::json row;
    row["t"] = tr.t;
    row["state"] = std::vector<double>(tr.state.data(),
                                       tr.state.data() + tr.state.size());
    row["action"] = std::vector<double>(tr.action.data(),
                                        tr.action.data() + tr.action.size());
    row["log_prob"] = tr.log_prob;
    row["reward"] = tr.reward;
    row["done"] = tr.done;
    row["truncated"] = tr.truncated;
    row["w"] = tr.w;
    row["value"] = tr.value;
    if (!tr.quantiles.empty()) row["quantiles"] = tr.quantiles;
    row["advantage"] = tr.advantage;
    row["ret_discounted"] = tr.ret_discounted;
    row["ret_undiscounted"] = tr.ret_undiscounted;
    out << row.dump() << "\n";
  }
}

}  // namespace mcclt
