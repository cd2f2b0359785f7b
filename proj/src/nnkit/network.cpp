#include "epf/nnkit/network.hpp"

#include <algorithm>
#include <cmath>

#include "epf/core/error.hpp"
#include "epf/core/random.hpp"
#include "epf/nnkit/kernels.hpp"

namespace epf::nn {

std::string to_string(Activation a) {
  switch (a) {
    case Activation::Relu: return "relu";
    case Activation::Sigmoid: return "sigmoid";
    case Activation::Linear: return "linear";
  }
  return "?";
}

std::string to_string(OptimizerKind o) { return o == OptimizerKind::Adam ? "adam" : "rmsprop"; }

Activation parse_activation(const std::string& s) {
  if (s == "relu") return Activation::Relu;
  if (s == "sigmoid") return Activation::Sigmoid;
  if (s == "linear") return Activation::Linear;
  throw ParseError("nnkit", "unknown activation '" + s + "'");
}

OptimizerKind parse_optimizer(const std::string& s) {
  if (s == "rmsprop") return OptimizerKind::RmsProp;
  if (s == "adam") return OptimizerKind::Adam;
  throw ParseError("nnkit", "unknown optimizer '" + s + "'");
}

void NetworkConfig::validate() const {
  if (!(learning_rate > 0.0)) throw InvalidArgumentError("nnkit", "learning rate must be positive");
  if (batch_size < 1) throw InvalidArgumentError("nnkit", "batch size must be at least 1");
  if (epochs && *epochs < 0) throw InvalidArgumentError("nnkit", "negative epoch count");
  if (output_activation != Activation::Linear) throw InvalidArgumentError("nnkit", "output activation must be linear");
  for (int n : neurons)
    if (n < 1) throw InvalidArgumentError("nnkit", "hidden layer with no neurons");
  if (!epochs && (early_stop_patience < 1 || max_epochs < 1))
    throw InvalidArgumentError("nnkit", "early stopping needs positive patience and cap");
}

NetworkConfig preset_config(int c) {
  NetworkConfig cfg;
  switch (c) {
    case 1: cfg.neurons = {2085}; break;
    case 2: cfg.neurons = {128, 128}; break;
    case 3: cfg.neurons = {2285, 1024}; break;
    case 4:
      cfg.neurons = {484, 381};
      cfg.hidden_activation = Activation::Sigmoid;
      cfg.optimizer = OptimizerKind::Adam;
      cfg.epochs.reset();
      break;
    case 5:
      cfg.neurons = {234, 203};
      cfg.optimizer = OptimizerKind::Adam;
      cfg.epochs.reset();
      break;
    default: throw InvalidArgumentError("nnkit", "no preset configuration c" + std::to_string(c));
  }
  return cfg;
}

int hidden_neurons(long long n_samples, int n_in, int n_out, double alpha) {
  if (n_samples <= 0 || n_in <= 0 || n_out <= 0 || !(alpha > 0.0))
    throw InvalidArgumentError("nnkit", "hidden_neurons needs positive arguments");
  const double v = std::floor(static_cast<double>(n_samples) / (alpha * (n_in + n_out)));
  return std::max(1, static_cast<int>(v));
}

std::span<const double> EmbeddingTable::row(int i) const {
  if (i < 0 || i >= vocab) throw LookupError("nnkit", "row " + std::to_string(i) + " outside table " + name);
  return {theta.value.data() + static_cast<std::size_t>(i) * dim, static_cast<std::size_t>(dim)};
}

void Samples::reserve(std::size_t n) {
  x.reserve(n * n_continuous);
  idx.reserve(n * n_indices);
  y.reserve(n * n_out);
}

Samples Samples::gather(std::span<const std::size_t> rows) const {
  Samples s;
  s.n_continuous = n_continuous;
  s.n_indices = n_indices;
  s.n_out = n_out;
  s.x.resize(rows.size() * n_continuous);
  s.idx.resize(rows.size() * n_indices);
  s.y.resize(rows.size() * n_out);
  for (std::size_t k = 0; k < rows.size(); ++k) {
    const std::size_t r = rows[k];
    std::copy_n(x.begin() + r * n_continuous, n_continuous, s.x.begin() + k * n_continuous);
    std::copy_n(idx.begin() + r * n_indices, n_indices, s.idx.begin() + k * n_indices);
    std::copy_n(y.begin() + r * n_out, n_out, s.y.begin() + k * n_out);
  }
  return s;
}

Samples Samples::range(std::size_t first, std::size_t count) const {
  std::vector<std::size_t> rows(count);
  for (std::size_t k = 0; k < count; ++k) rows[k] = first + k;
  return gather(rows);
}

Network::Network(int n_continuous, std::vector<EmbeddingShape> embeddings, std::vector<int> hidden, Activation act,
                 int n_out)
    : n_continuous_(n_continuous), n_out_(n_out), act_(act), hidden_(std::move(hidden)) {
  if (n_continuous < 0 || n_out < 1) throw InvalidArgumentError("nnkit", "bad network input/output width");
  for (auto& e : embeddings) {
    if (e.vocab < 1 || e.dim < 1) throw InvalidArgumentError("nnkit", "embedding " + e.name + " needs vocab, dim >= 1");
    embeddings_.push_back(EmbeddingTable{e.name, e.vocab, e.dim, Tensor(e.vocab, e.dim)});
  }
  int in = input_width();
  if (in < 1) throw InvalidArgumentError("nnkit", "network has no inputs");
  std::vector<int> widths = hidden_;
  widths.push_back(n_out);
  for (int w : widths) {
    if (w < 1) throw InvalidArgumentError("nnkit", "layer with no neurons");
    DenseLayer l;
    l.W = Tensor(in, w);
    l.b = Tensor({static_cast<std::size_t>(w)}, std::vector<double>(w, 0.0));
    layers_.push_back(std::move(l));
    in = w;
  }
}

int Network::input_width() const {
  int w = n_continuous_;
  for (const auto& e : embeddings_) w += e.dim;
  return w;
}

void Network::initialize(std::uint64_t seed) {
  Rng rng(seed);
  for (auto& e : embeddings_)
    for (double& v : e.theta.value) v = rng.uniform(-0.05, 0.05);
  for (auto& l : layers_) {
    const double lim = std::sqrt(6.0 / static_cast<double>(l.W.shape[0] + l.W.shape[1]));
    for (double& v : l.W.value) v = rng.uniform(-lim, lim);
    std::fill(l.b.value.begin(), l.b.value.end(), 0.0);
  }
}

void Network::check_batch(const Samples& batch) const {
  if (batch.n_continuous != static_cast<std::size_t>(n_continuous_))
    throw ShapeError("nnkit", "expected " + std::to_string(n_continuous_) + " continuous inputs, got " +
                                  std::to_string(batch.n_continuous));
  if (batch.n_indices != embeddings_.size())
    throw ShapeError("nnkit", "expected " + std::to_string(embeddings_.size()) + " embedding indices, got " +
                                  std::to_string(batch.n_indices));
  if (batch.n_out != static_cast<std::size_t>(n_out_)) throw ShapeError("nnkit", "target width mismatch");
  const std::size_t n = batch.size();
  if (batch.x.size() != n * batch.n_continuous || batch.idx.size() != n * batch.n_indices)
    throw ShapeError("nnkit", "ragged sample block");
}

Tape::Var Network::forward(Tape& tape, const Samples& batch) {
  check_batch(batch);
  const std::size_t n = batch.size();
  std::vector<Tape::Var> parts;
  if (n_continuous_ > 0) parts.push_back(tape.input(Tensor({n, batch.n_continuous}, batch.x)));
  for (std::size_t k = 0; k < embeddings_.size(); ++k) {
    std::vector<std::int32_t> col(n);
    for (std::size_t r = 0; r < n; ++r) col[r] = batch.idx[r * batch.n_indices + k];
    parts.push_back(tape.embedding(embeddings_[k].theta, std::move(col)));
  }
  Tape::Var h = parts.size() == 1 ? parts[0] : tape.concat(parts);
  for (std::size_t l = 0; l < layers_.size(); ++l) {
    h = tape.dense(h, layers_[l].W, layers_[l].b);
    if (l + 1 == layers_.size()) break;
    if (act_ == Activation::Relu) h = tape.relu(h);
    else if (act_ == Activation::Sigmoid) h = tape.sigmoid(h);
  }
  return h;
}

std::vector<double> Network::predict(const Samples& batch) const {
  check_batch(batch);
  const std::size_t n = batch.size();
  const std::size_t width = input_width();
  std::vector<double> h(n * width);
  for (std::size_t r = 0; r < n; ++r) {
    double* dst = h.data() + r * width;
    for (std::size_t c = 0; c < batch.n_continuous; ++c) *dst++ = batch.x[r * batch.n_continuous + c];
    for (std::size_t k = 0; k < embeddings_.size(); ++k) {
      const auto row = embeddings_[k].row(batch.idx[r * batch.n_indices + k]);
      dst = std::copy(row.begin(), row.end(), dst);
    }
  }
  std::size_t in = width;
  for (std::size_t l = 0; l < layers_.size(); ++l) {
    const std::size_t out = layers_[l].W.shape[1];
    std::vector<double> y(n * out);
    omp::dense_forward(h.data(), layers_[l].W.value.data(), layers_[l].b.value.data(), y.data(), n, in, out);
    if (l + 1 < layers_.size()) {
      if (act_ == Activation::Relu)
        for (double& v : y) v = v > 0.0 ? v : 0.0;
      else if (act_ == Activation::Sigmoid)
        for (double& v : y) v = 1.0 / (1.0 + std::exp(-v));
    }
    h = std::move(y);
    in = out;
  }
  return h;
}

double Network::loss(const Samples& batch) const {
  const auto p = predict(batch);
  if (p.empty()) throw InvalidArgumentError("nnkit", "loss of an empty batch");
  double s = 0.0;
  for (std::size_t k = 0; k < p.size(); ++k) {
    const double d = p[k] - batch.y[k];
    s += d * d;
  }
  return s / static_cast<double>(p.size());
}

std::vector<Tensor*> Network::parameters() {
  std::vector<Tensor*> ps;
  for (auto& e : embeddings_) ps.push_back(&e.theta);
  for (auto& l : layers_) {
    ps.push_back(&l.W);
    ps.push_back(&l.b);
  }
  return ps;
}

std::size_t Network::parameter_count() const {
  std::size_t n = 0;
  for (const auto& e : embeddings_) n += e.theta.size();
  for (const auto& l : layers_) n += l.W.size() + l.b.size();
  return n;
}

std::vector<double> Network::flat() const {
  std::vector<double> v;
  v.reserve(parameter_count());
  for (const auto& e : embeddings_) v.insert(v.end(), e.theta.value.begin(), e.theta.value.end());
  for (const auto& l : layers_) {
    v.insert(v.end(), l.W.value.begin(), l.W.value.end());
    v.insert(v.end(), l.b.value.begin(), l.b.value.end());
  }
  return v;
}

void Network::set_flat(std::span<const double> v) {
  if (v.size() != parameter_count()) throw ShapeError("nnkit", "flat parameter vector has the wrong length");
  std::size_t o = 0;
  for (Tensor* t : parameters()) {
    std::copy_n(v.begin() + o, t->size(), t->value.begin());
    o += t->size();
  }
}

void Network::zero_grad() {
  for (Tensor* t : parameters()) t->zero_grad();
}

}  // namespace epf::nn
