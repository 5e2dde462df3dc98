#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "uapsim/rng.hpp"
#include "uapsim/tensor.hpp"

namespace uap {

// Handle into a layer's parameter storage. Gradient buffers always mirror
// the parameter shape. Batch-norm tensors (affine parameters and running
// statistics) carry is_batch_norm so aggregation can skip them; running
// statistics additionally have trainable == false.
struct ParamRef {
  std::string name;
  Tensor* value = nullptr;
  Tensor* grad = nullptr;
  bool is_batch_norm = false;
  bool trainable = true;
};

// Value-semantics copy of a model's parameters, the unit that gets
// serialized, broadcast, and aggregated.
struct NamedTensor {
  std::string name;
  Tensor value;
  bool is_batch_norm = false;
  bool trainable = true;
};

struct ParamSnapshot {
  std::vector<NamedTensor> tensors;

  std::size_t scalar_count() const {
    std::size_t n = 0;
    for (const auto& t : tensors) n += t.value.size();
    return n;
  }
};

// Binary wire format for model payloads: magic, version, then per tensor
// name, flags, extents, and little-endian float64 data.
std::vector<std::uint8_t> serialize_params(const ParamSnapshot& snap);
ParamSnapshot deserialize_params(const std::vector<std::uint8_t>& bytes);

class Layer {
 public:
  virtual ~Layer() = default;
  virtual const char* kind() const = 0;
  // train == true caches activations for backward and lets batch norm update
  // running statistics; eval mode mutates nothing.
  virtual Tensor forward(const Tensor& x, bool train) = 0;
  virtual Tensor backward(const Tensor& grad_out) = 0;
  virtual void collect_params(const std::string& prefix,
                              std::vector<ParamRef>& out) {}
  // He-normal weights, zero biases; no-op for parameterless layers.
  virtual void init_params(Rng& rng) {}
};

class DenseLayer final : public Layer {
 public:
  DenseLayer(std::size_t in, std::size_t out, bool with_bias = true);
  const char* kind() const override { return "dense"; }
  Tensor forward(const Tensor& x, bool train) override;
  Tensor backward(const Tensor& grad_out) override;
  void collect_params(const std::string& prefix,
                      std::vector<ParamRef>& out) override;
  void init_params(Rng& rng) override;

  Tensor& weight() { return weight_; }
  const Tensor& weight() const { return weight_; }
  Tensor& weight_grad() { return weight_grad_; }
  std::size_t in_features() const { return in_; }
  std::size_t out_features() const { return out_; }

 private:
  std::size_t in_, out_;
  bool with_bias_;
  Tensor weight_, bias_;            // weight is (in x out)
  Tensor weight_grad_, bias_grad_;
  Tensor cached_input_;
  bool has_cache_ = false;
};

class ReluLayer final : public Layer {
 public:
  const char* kind() const override { return "relu"; }
  Tensor forward(const Tensor& x, bool train) override;
  Tensor backward(const Tensor& grad_out) override;

 private:
  Tensor cached_input_;
  bool has_cache_ = false;
};

// Valid (no-padding) 2-D convolution, stride 1, square kernel. Activations
// are laid out as {n, channels, height, width}. Forward/backward are im2col
// plus GEMM.
class Conv2dLayer final : public Layer {
 public:
  Conv2dLayer(std::size_t in_channels, std::size_t out_channels,
              std::size_t kernel);
  const char* kind() const override { return "conv2d"; }
  Tensor forward(const Tensor& x, bool train) override;
  Tensor backward(const Tensor& grad_out) override;
  void collect_params(const std::string& prefix,
                      std::vector<ParamRef>& out) override;
  void init_params(Rng& rng) override;

  Tensor& weight() { return weight_; }  // (out_c, in_c, k, k)

 private:
  std::size_t in_c_, out_c_, k_;
  Tensor weight_, bias_;
  Tensor weight_grad_, bias_grad_;
  Tensor cached_cols_;  // (n*oh*ow, in_c*k*k)
  std::vector<std::size_t> cached_in_shape_;
  bool has_cache_ = false;
};

// 2x2 max pooling with stride 2. Odd trailing rows/columns are dropped.
class MaxPool2Layer final : public Layer {
 public:
  const char* kind() const override { return "maxpool2"; }
  Tensor forward(const Tensor& x, bool train) override;
  Tensor backward(const Tensor& grad_out) override;

 private:
  std::vector<std::size_t> cached_in_shape_;
  std::vector<std::size_t> argmax_;
  bool has_cache_ = false;
};

// Reshape {n, c, h, w} -> {n, c*h*w}.
class FlattenLayer final : public Layer {
 public:
  const char* kind() const override { return "flatten"; }
  Tensor forward(const Tensor& x, bool train) override;
  Tensor backward(const Tensor& grad_out) override;

 private:
  std::vector<std::size_t> cached_in_shape_;
  bool has_cache_ = false;
};

// Per-feature batch normalization over 2-D activations {n, d}.
class BatchNorm1dLayer final : public Layer {
 public:
  explicit BatchNorm1dLayer(std::size_t features, double momentum = 0.1,
                            double eps = 1e-5);
  const char* kind() const override { return "batchnorm1d"; }
  Tensor forward(const Tensor& x, bool train) override;
  Tensor backward(const Tensor& grad_out) override;
  void collect_params(const std::string& prefix,
                      std::vector<ParamRef>& out) override;

  const Tensor& running_mean() const { return running_mean_; }
  const Tensor& running_var() const { return running_var_; }

 private:
  std::size_t d_;
  double momentum_, eps_;
  Tensor gamma_, beta_, gamma_grad_, beta_grad_;
  Tensor running_mean_, running_var_;  // non-trainable state, flagged BN
  Tensor cached_xhat_, cached_invstd_, cached_centered_;
  bool has_cache_ = false;
};

// Cosine-decayed SGD. The schedule is stepped once per communication round:
// lr(t) = lr0 * 0.5 * (1 + cos(pi * t / T)), constant within the round.
struct OptimizerState {
  double lr0 = 0.002;
  int round = 0;
  int total_rounds = 1;
  double momentum = 0.0;  // 0 disables the accumulators
  std::vector<Tensor> velocity;

  double learning_rate() const;
};

// p <- p - lr(t) * g for every trainable tensor, then zeroes all gradients.
void sgd_step(std::vector<ParamRef>& params, OptimizerState& opt);

// The model split G∘F: an explicit feature stack F followed by one linear
// classifier G whose (m x K) weight doubles as the per-class Gaussian means.
class Network {
 public:
  Network(std::vector<std::unique_ptr<Layer>> feature_layers,
          std::unique_ptr<DenseLayer> classifier, std::size_t feature_dim,
          std::size_t class_count);

  Network(Network&&) = default;
  Network& operator=(Network&&) = default;

  Tensor forward_features(const Tensor& batch, bool train);
  Tensor classify(const Tensor& z);

  // Backprop from logit gradients, optionally adding a gradient applied
  // directly to the features (alignment losses attach there).
  void backward(const Tensor& dlogits);
  void backward(const Tensor& dlogits, const Tensor& dfeatures);

  std::vector<ParamRef>& params() { return params_; }
  const std::vector<ParamRef>& params() const { return params_; }
  void zero_grads();

  const Tensor& classifier_weight() const { return classifier_->weight(); }
  std::size_t feature_dim() const { return feature_dim_; }
  std::size_t class_count() const { return class_count_; }

  ParamSnapshot snapshot() const;
  // skip_batch_norm leaves BN-flagged tensors untouched (FedBN receive path).
  void load(const ParamSnapshot& snap, bool skip_batch_norm = false);

  void init_params(std::uint64_t seed);

 private:
  std::vector<std::unique_ptr<Layer>> feature_layers_;
  std::unique_ptr<DenseLayer> classifier_;
  std::size_t feature_dim_, class_count_;
  std::vector<ParamRef> params_;
  bool train_cache_valid_ = false;
};

// Architectures selectable from configs. "cnn28" is the 28x28 digit default
// (conv 1->32 5x5, pool, conv 32->64 5x5, pool, dense->128); "mlp" is the
// fast two-hidden-layer variant; "mlp-bn" adds batch norm after each hidden
// dense layer. input_shape excludes the batch dimension.
Network make_network(const std::string& arch_id,
                     const std::vector<std::size_t>& input_shape,
                     std::size_t class_count, std::uint64_t seed);

}  // namespace uap
