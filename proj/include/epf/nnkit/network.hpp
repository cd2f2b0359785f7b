#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "epf/nnkit/tape.hpp"
#include "epf/nnkit/tensor.hpp"

namespace epf::nn {

enum class Activation { Relu, Sigmoid, Linear };
enum class OptimizerKind { RmsProp, Adam };

std::string to_string(Activation a);
std::string to_string(OptimizerKind o);
Activation parse_activation(const std::string& s);
OptimizerKind parse_optimizer(const std::string& s);

struct NetworkConfig {
  std::vector<int> neurons;
  Activation hidden_activation = Activation::Relu;
  Activation output_activation = Activation::Linear;
  std::optional<int> epochs = 10;  // empty means early stopping
  OptimizerKind optimizer = OptimizerKind::RmsProp;
  double learning_rate = 1e-3;
  int batch_size = 64;
  std::uint64_t seed = 1;
  int early_stop_patience = 10;
  int max_epochs = 200;
  double validation_fraction = 0.1;
  double rho = 0.9;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;

  int hidden_layers() const { return static_cast<int>(neurons.size()); }
  void validate() const;
};

// Dense configurations c1..c5.
NetworkConfig preset_config(int c);

// floor(n_samples / (alpha (n_in + n_out))), at least 1.
int hidden_neurons(long long n_samples, int n_in, int n_out, double alpha);

struct EmbeddingShape {
  std::string name;
  int vocab = 0;
  int dim = 0;
};

struct EmbeddingTable {
  std::string name;
  int vocab = 0;
  int dim = 0;
  Tensor theta;  // vocab x dim

  std::span<const double> row(int i) const;
};

struct DenseLayer {
  Tensor W;  // in x out
  Tensor b;
};

// Row-major block of samples: continuous inputs, embedding indices, targets.
struct Samples {
  std::size_t n_continuous = 0;
  std::size_t n_indices = 0;
  std::size_t n_out = 1;
  std::vector<double> x;
  std::vector<std::int32_t> idx;
  std::vector<double> y;

  std::size_t size() const { return n_out == 0 ? 0 : y.size() / n_out; }
  void reserve(std::size_t n);
  // Copies the listed rows, in order.
  Samples gather(std::span<const std::size_t> rows) const;
  Samples range(std::size_t first, std::size_t count) const;
};

class Network {
 public:
  Network() = default;
  Network(int n_continuous, std::vector<EmbeddingShape> embeddings, std::vector<int> hidden, Activation act,
          int n_out = 1);

  // Uniform +-sqrt(6/(fan_in+fan_out)) weights, zero biases, embedding rows
  // uniform in +-0.05.
  void initialize(std::uint64_t seed);

  Tape::Var forward(Tape& tape, const Samples& batch);
  std::vector<double> predict(const Samples& batch) const;
  // Mean squared error of predict() against batch.y.
  double loss(const Samples& batch) const;

  std::vector<Tensor*> parameters();
  std::size_t parameter_count() const;
  std::vector<double> flat() const;
  void set_flat(std::span<const double> v);
  void zero_grad();

  int n_continuous() const { return n_continuous_; }
  int n_out() const { return n_out_; }
  int input_width() const;
  Activation activation() const { return act_; }
  const std::vector<int>& hidden() const { return hidden_; }
  const std::vector<EmbeddingTable>& embeddings() const { return embeddings_; }
  std::vector<EmbeddingTable>& embeddings() { return embeddings_; }
  const std::vector<DenseLayer>& layers() const { return layers_; }
  std::vector<DenseLayer>& layers() { return layers_; }

 private:
  void check_batch(const Samples& batch) const;

  int n_continuous_ = 0;
  int n_out_ = 1;
  Activation act_ = Activation::Relu;
  std::vector<int> hidden_;
  std::vector<EmbeddingTable> embeddings_;
  std::vector<DenseLayer> layers_;
};

}  // namespace epf::nn
