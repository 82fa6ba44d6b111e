#pragma once

#include <Eigen/Dense>
#include <iosfwd>
#include <string>
#include <vector>

#include "mcclt/rng.hpp"

namespace mcclt {

enum class Activation { kTanh, kRelu };

Activation activation_from_string(const std::string& name);
std::string to_string(Activation act);

// Plain fully connected network: hidden layers share one activation, the
// output layer is linear. weights[l] maps layer_dims[l] -> layer_dims[l+1].
struct Mlp {
  std::vector<int> layer_dims;
  Activation activation = Activation::kTanh;
  std::vector<Eigen::MatrixXd> weights;
  std::vector<Eigen::VectorXd> biases;

  // Xavier-uniform weights drawn from rng in layer order, zero biases.
  static Mlp init(const std::vector<int>& dims, Activation act, Rng& rng);
  static Mlp zeros(const std::vector<int>& dims, Activation act);

  int input_dim() const { return layer_dims.front(); }
  int output_dim() const { return layer_dims.back(); }
  std::size_t layer_count() const { return weights.size(); }
};

// Gradient (or tangent) storage shaped like an Mlp's parameters.
struct MlpGrads {
  std::vector<Eigen::MatrixXd> weights;
  std::vector<Eigen::VectorXd> biases;

  static MlpGrads zeros_like(const Mlp& net);
  void setZero();
};

// Post-activation values recorded by forward_batch; layer_inputs[l] is the
// input to layer l (so layer_inputs[0] is the network input), one column per
// batch element.
struct ForwardCache {
  std::vector<Eigen::MatrixXd> layer_inputs;
};

Eigen::VectorXd forward(const Mlp& net, const Eigen::VectorXd& input);

// inputs: input_dim x batch. Returns output_dim x batch.
Eigen::MatrixXd forward_batch(const Mlp& net, const Eigen::MatrixXd& inputs);
Eigen::MatrixXd forward_batch(const Mlp& net, const Eigen::MatrixXd& inputs,
                              ForwardCache& cache);

// Backpropagates output_grads (output_dim x batch) through the cached pass,
// accumulating parameter gradients into grads. Returns input gradients.
Eigen::MatrixXd backward_batch(const Mlp& net, const ForwardCache& cache,
                               const Eigen::MatrixXd& output_grads,
                               MlpGrads& grads);

// Single-sample convenience wrapper around the batch form.
struct BackwardResult {
  MlpGrads grads;
  Eigen::VectorXd input_grad;
};
BackwardResult backward(const Mlp& net, const Eigen::VectorXd& input,
                        const Eigen::VectorXd& output_grad);

// Directional derivative of the batched output along the parameter direction
// `dir` (forward-mode pass reusing a cache from forward_batch). Used for
// Fisher-vector products in the trust-region update.
Eigen::MatrixXd forward_directional(const Mlp& net, const ForwardCache& cache,
                                    const MlpGrads& dir);

struct AdamConfig {
  double lr = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
};

// Moment accumulators for one Mlp. step counts completed updates.
struct AdamState {
  AdamConfig cfg;
  long step = 0;
  std::vector<Eigen::ArrayXXd> m_w, v_w;
  std::vector<Eigen::ArrayXd> m_b, v_b;

  static AdamState init(const Mlp& net, const AdamConfig& cfg);
};

void adam_step(Mlp& net, const MlpGrads& grads, AdamState& state);

// Same update for a free parameter vector (the policy log-std).
struct AdamVecState {
  AdamConfig cfg;
  long step = 0;
  Eigen::ArrayXd m, v;

  static AdamVecState init(int n, const AdamConfig& cfg);
};

void adam_step(Eigen::VectorXd& param, const Eigen::VectorXd& grad,
               AdamVecState& state);

// Versioned text checkpoints. Values are written with 17 significant digits,
// so load(save(net)) reproduces the parameters bit for bit. `extras` carries
// named parameter vectors stored alongside the net (e.g. a policy log-std).
struct NamedVector {
  std::string name;
  Eigen::VectorXd value;
};

void save_mlp(std::ostream& out, const Mlp& net,
              const std::vector<NamedVector>& extras = {});
Mlp load_mlp(std::istream& in, std::vector<NamedVector>* extras = nullptr);
void save_mlp_file(const std::string& path, const Mlp& net,
                   const std::vector<NamedVector>& extras = {});
Mlp load_mlp_file(const std::string& path,
                  std::vector<NamedVector>* extras = nullptr);

}  // namespace mcclt
