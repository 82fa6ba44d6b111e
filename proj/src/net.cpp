#include "mcclt/net.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace mcclt {
namespace {

void check_dims(const std::vector<int>& dims) {
  if (dims.size() < 2) {
    throw std::invalid_argument("Mlp: need at least input and output dims");
  }
  for (int d : dims) {
    if (d < 1) throw std::invalid_argument("Mlp: layer dims must be >= 1");
  }
}

Eigen::MatrixXd apply_hidden_activation(const Eigen::MatrixXd& z,
                                        Activation act) {
  if (act == Activation::kTanh) {
    return z.array().tanh();
  }
  return z.array().max(0.0);
}

// Derivative of the hidden activation expressed through its output value:
// tanh' = 1 - a^2, relu' = 1{a > 0}.
Eigen::ArrayXXd activation_deriv_from_output(const Eigen::MatrixXd& a,
                                             Activation act) {
  if (act == Activation::kTanh) {
    return 1.0 - a.array().square();
  }
  return (a.array() > 0.0).cast<double>();
}

}  // namespace

Activation activation_from_string(const std::string& name) {
  if (name == "tanh") return Activation::kTanh;
  if (name == "relu") return Activation::kRelu;
  throw std::invalid_argument("unknown activation: " + name);
}

std::string to_string(Activation act) {
  return act == Activation::kTanh ? "tanh" : "relu";
}

Mlp Mlp::init(const std::vector<int>& dims, Activation act, Rng& rng) {
  check_dims(dims);
  Mlp net;
  net.layer_dims = dims;
  net.activation = act;
  for (std::size_t l = 0; l + 1 < dims.size(); ++l) {
    const int fan_in = dims[l];
    const int fan_out = dims[l + 1];
    const double limit = std::sqrt(6.0 / static_cast<double>(fan_in + fan_out));
    Eigen::MatrixXd w(fan_out, fan_in);
    for (int r = 0; r < fan_out; ++r) {
      for (int c = 0; c < fan_in; ++c) {
        w(r, c) = rng.uniform(-limit, limit);
      }
    }
    net.weights.push_back(std::move(w));
    net.biases.push_back(Eigen::VectorXd::Zero(fan_out));
  }
  return net;
}

Mlp Mlp::zeros(const std::vector<int>& dims, Activation act) {
  check_dims(dims);
  Mlp net;
  net.layer_dims = dims;
  net.activation = act;
  for (std::size_t l = 0; l + 1 < dims.size(); ++l) {
    net.weights.push_back(Eigen::MatrixXd::Zero(dims[l + 1], dims[l]));
    net.biases.push_back(Eigen::VectorXd::Zero(dims[l + 1]));
  }
  return net;
}

MlpGrads MlpGrads::zeros_like(const Mlp& net) {
  MlpGrads g;
  for (std::size_t l = 0; l < net.weights.size(); ++l) {
    g.weights.push_back(
        Eigen::MatrixXd::Zero(net.weights[l].rows(), net.weights[l].cols()));
    g.biases.push_back(Eigen::VectorXd::Zero(net.biases[l].size()));
  }
  return g;
}

void MlpGrads::setZero() {
  for (auto& w : weights) w.setZero();
  for (auto& b : biases) b.setZero();
}

Eigen::MatrixXd forward_batch(const Mlp& net, const Eigen::MatrixXd& inputs,
                              ForwardCache& cache) {
  if (inputs.rows() != net.input_dim()) {
    throw std::invalid_argument("forward: input dimension mismatch");
  }
  cache.layer_inputs.clear();
  cache.layer_inputs.reserve(net.layer_count() + 1);
  Eigen::MatrixXd x = inputs;
  cache.layer_inputs.push_back(x);
  for (std::size_t l = 0; l < net.layer_count(); ++l) {
    Eigen::MatrixXd z = (net.weights[l] * x).colwise() + net.biases[l];
    if (l + 1 < net.layer_count()) {
      x = apply_hidden_activation(z, net.activation);
    } else {
      x = std::move(z);
    }
    cache.layer_inputs.push_back(x);
  }
  return x;
}

Eigen::MatrixXd forward_batch(const Mlp& net, const Eigen::MatrixXd& inputs) {
  ForwardCache cache;
  return forward_batch(net, inputs, cache);
}

Eigen::VectorXd forward(const Mlp& net, const Eigen::VectorXd& input) {
  return forward_batch(net, input).col(0);
}

Eigen::MatrixXd backward_batch(const Mlp& net, const ForwardCache& cache,
                               const Eigen::MatrixXd& output_grads,
                               MlpGrads& grads) {
  if (cache.layer_inputs.size() != net.layer_count() + 1) {
    throw std::invalid_argument("backward: cache does not match network");
  }
  if (output_grads.rows() != net.output_dim() ||
      output_grads.cols() != cache.layer_inputs[0].cols()) {
    throw std::invalid_argument("backward: output gradient shape mismatch");
  }
  if (grads.weights.size() != net.layer_count()) {
    throw std::invalid_argument("backward: gradient storage shape mismatch");
  }
  Eigen::MatrixXd delta = output_grads;  // dL/dz of the current layer
  for (std::size_t l = net.layer_count(); l-- > 0;) {
    grads.weights[l].noalias() += delta * cache.layer_inputs[l].transpose();
    grads.biases[l].noalias() += delta.rowwise().sum();
    Eigen::MatrixXd input_grad = net.weights[l].transpose() * delta;
    if (l > 0) {
      input_grad.array() *=
          activation_deriv_from_output(cache.layer_inputs[l], net.activation);
    }
    delta = std::move(input_grad);
  }
  return delta;
}

BackwardResult backward(const Mlp& net, const Eigen::VectorXd& input,
                        const Eigen::VectorXd& output_grad) {
  ForwardCache cache;
  forward_batch(net, input, cache);
  BackwardResult result;
  result.grads = MlpGrads::zeros_like(net);
  result.input_grad =
      backward_batch(net, cache, output_grad, result.grads).col(0);
  return result;
}

Eigen::MatrixXd forward_directional(const Mlp& net, const ForwardCache& cache,
                                    const MlpGrads& dir) {
  if (cache.layer_inputs.size() != net.layer_count() + 1) {
    throw std::invalid_argument("forward_directional: cache mismatch");
  }
  const Eigen::Index batch = cache.layer_inputs[0].cols();
  Eigen::MatrixXd dx = Eigen::MatrixXd::Zero(net.input_dim(), batch);
  for (std::size_t l = 0; l < net.layer_count(); ++l) {
    Eigen::MatrixXd dz =
        (dir.weights[l] * cache.layer_inputs[l] + net.weights[l] * dx)
            .colwise() +
        dir.biases[l];
    if (l + 1 < net.layer_count()) {
      dz.array() *= activation_deriv_from_output(cache.layer_inputs[l + 1],
                                                 net.activation);
    }
    dx = std::move(dz);
  }
  return dx;
}

AdamState AdamState::init(const Mlp& net, const AdamConfig& cfg) {
  AdamState s;
  s.cfg = cfg;
  for (std::size_t l = 0; l < net.weights.size(); ++l) {
    s.m_w.push_back(
        Eigen::ArrayXXd::Zero(net.weights[l].rows(), net.weights[l].cols()));
    s.v_w.push_back(
        Eigen::ArrayXXd::Zero(net.weights[l].rows(), net.weights[l].cols()));
    s.m_b.push_back(Eigen::ArrayXd::Zero(net.biases[l].size()));
    s.v_b.push_back(Eigen::ArrayXd::Zero(net.biases[l].size()));
  }
  return s;
}

namespace {

template <typename Param, typename Grad, typename Moment>
void adam_update_tensor(Param& p, const Grad& g, Moment& m, Moment& v,
                        const AdamConfig& cfg, double bc1, double bc2) {
  m = cfg.beta1 * m + (1.0 - cfg.beta1) * g;
  v = cfg.beta2 * v + (1.0 - cfg.beta2) * g.square();
  p.array() -= cfg.lr * (m / bc1) / ((v / bc2).sqrt() + cfg.eps);
}

}  // namespace

void adam_step(Mlp& net, const MlpGrads& grads, AdamState& state) {
  if (grads.weights.size() != net.layer_count() ||
      state.m_w.size() != net.layer_count()) {
    throw std::invalid_argument("adam_step: shape mismatch");
  }
  for (std::size_t l = 0; l < net.layer_count(); ++l) {
    if (grads.weights[l].rows() != net.weights[l].rows() ||
        grads.weights[l].cols() != net.weights[l].cols() ||
        grads.biases[l].size() != net.biases[l].size()) {
      throw std::invalid_argument("adam_step: shape mismatch");
    }
  }
  state.step += 1;
  const double bc1 = 1.0 - std::pow(state.cfg.beta1, state.step);
  const double bc2 = 1.0 - std::pow(state.cfg.beta2, state.step);
  for (std::size_t l = 0; l < net.layer_count(); ++l) {
    adam_update_tensor(net.weights[l], grads.weights[l].array(), state.m_w[l],
                       state.v_w[l], state.cfg, bc1, bc2);
    adam_update_tensor(net.biases[l], grads.biases[l].array(), state.m_b[l],
                       state.v_b[l], state.cfg, bc1, bc2);
  }
}

AdamVecState AdamVecState::init(int n, const AdamConfig& cfg) {
  AdamVecState s;
  s.cfg = cfg;
  s.m = Eigen::ArrayXd::Zero(n);
  s.v = Eigen::ArrayXd::Zero(n);
  return s;
}

void adam_step(Eigen::VectorXd& param, const Eigen::VectorXd& grad,
               AdamVecState& state) {
  if (param.size() != grad.size() || param.size() != state.m.size()) {
    throw std::invalid_argument("adam_step: shape mismatch");
  }
  state.step += 1;
  const double bc1 = 1.0 - std::pow(state.cfg.beta1, state.step);
  const double bc2 = 1.0 - std::pow(state.cfg.beta2, state.step);
  adam_update_tensor(param, grad.array(), state.m, state.v, state.cfg, bc1,
                     bc2);
}

namespace {

constexpr const char* kCheckpointMagic = "mcclt-checkpoint";
constexpr int kCheckpointVersion = 1;

void write_value(std::ostream& out, double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  out << buf;
}

double read_value(std::istream& in) {
  double v;
  if (!(in >> v)) throw std::runtime_error("checkpoint: truncated values");
  return v;
}

}  // namespace

void save_mlp(std::ostream& out, const Mlp& net,
              const std::vector<NamedVector>& extras) {
  out << kCheckpointMagic << " v" << kCheckpointVersion << "\n";
  out << "activation " << to_string(net.activation) << "\n";
  out << "dims";
  for (int d : net.layer_dims) out << " " << d;
  out << "\n";
  for (std::size_t l = 0; l < net.layer_count(); ++l) {
    out << "W" << l << " " << net.weights[l].rows() << " "
        << net.weights[l].cols() << "\n";
    for (Eigen::Index r = 0; r < net.weights[l].rows(); ++r) {
      for (Eigen::Index c = 0; c < net.weights[l].cols(); ++c) {
        if (c > 0) out << " ";
        write_value(out, net.weights[l](r, c));
      }
      out << "\n";
    }
    out << "b" << l << " " << net.biases[l].size() << "\n";
    for (Eigen::Index i = 0; i < net.biases[l].size(); ++i) {
      if (i > 0) out << " ";
      write_value(out, net.biases[l](i));
    }
    out << "\n";
  }
  out << "extras " << extras.size() << "\n";
  for (const auto& extra : extras) {
    out << extra.name << " " << extra.value.size() << "\n";
    for (Eigen::Index i = 0; i < extra.value.size(); ++i) {
      if (i > 0) out << " ";
      write_value(out, extra.value(i));
    }
    out << "\n";
  }
}

Mlp load_mlp(std::istream& in, std::vector<NamedVector>* extras) {
  std::string magic, version;
  if (!(in >> magic >> version) || magic != kCheckpointMagic ||
      version != "v1") {
    throw std::runtime_error("checkpoint: bad header");
  }
  std::string key;
  in >> key;
  if (key != "activation") throw std::runtime_error("checkpoint: bad format");
  std::string act_name;
  in >> act_name;
  in >> key;
  if (key != "dims") throw std::runtime_error("checkpoint: bad format");
  std::string dims_line;
  std::getline(in, dims_line);
  std::istringstream dims_in(dims_line);
  std::vector<int> dims;
  int d;
  while (dims_in >> d) dims.push_back(d);
  Mlp net = Mlp::zeros(dims, activation_from_string(act_name));
  for (std::size_t l = 0; l < net.layer_count(); ++l) {
    Eigen::Index rows, cols, n;
    in >> key >> rows >> cols;
    if (!in || rows != net.weights[l].rows() || cols != net.weights[l].cols()) {
      throw std::runtime_error("checkpoint: weight shape mismatch");
    }
    for (Eigen::Index r = 0; r < rows; ++r) {
      for (Eigen::Index c = 0; c < cols; ++c) {
        net.weights[l](r, c) = read_value(in);
      }
    }
    in >> key >> n;
    if (!in || n != net.biases[l].size()) {
      throw std::runtime_error("checkpoint: bias shape mismatch");
    }
    for (Eigen::Index i = 0; i < n; ++i) net.biases[l](i) = read_value(in);
  }
  std::size_t extra_count = 0;
  in >> key >> extra_count;
  if (!in || key != "extras") {
    throw std::runtime_error("checkpoint: missing extras section");
  }
  std::vector<NamedVector> loaded;
  for (std::size_t i = 0; i < extra_count; ++i) {
    NamedVector nv;
    Eigen::Index n;
    in >> nv.name >> n;
    if (!in) throw std::runtime_error("checkpoint: bad extras");
    nv.value.resize(n);
    for (Eigen::Index j = 0; j < n; ++j) nv.value(j) = read_value(in);
    loaded.push_back(std::move(nv));
  }
  if (extras) *extras = std::move(loaded);
  return net;
}

void save_mlp_file(const std::string& path, const Mlp& net,
                   const std::vector<NamedVector>& extras) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open checkpoint file: " + path);
  save_mlp(out, net, extras);
  if (!out) throw std::runtime_error("failed writing checkpoint: " + path);
}

Mlp load_mlp_file(const std::string& path, std::vector<NamedVector>* extras) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open checkpoint file: " + path);
  return load_mlp(in, extras);
}

}  // namespace mcclt
