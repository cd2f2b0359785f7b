#pragma once

#include <cstdint>
#include <deque>
#include <functional>
#include <span>
#include <vector>

#include "epf/nnkit/tensor.hpp"

namespace epf::nn {

// Reverse-mode tape over batched 2-D tensors. Each op appends a node holding
// its value and a closure that pushes the node's gradient to its inputs.
// Parameters live outside the tape; their gradients accumulate into
// Tensor::grad and are never cleared by the tape.
class Tape {
 public:
  using Var = std::size_t;

  Var input(Tensor value);
  Var dense(Var x, Tensor& W, Tensor& b);
  Var relu(Var x);
  Var sigmoid(Var x);
  // Row r of the result is theta[indices[r]].
  Var embedding(Tensor& theta, std::vector<std::int32_t> indices);
  Var concat(std::span<const Var> parts);
  // Mean of squared differences over all elements; a 1x1 node.
  Var mse(Var pred, std::span<const double> target);

  const Tensor& value(Var v) const { return nodes_[v].t; }
  const std::vector<double>& grad(Var v) const { return nodes_[v].t.grad; }
  std::size_t size() const { return nodes_.size(); }

  void backward(Var loss);
  void clear() { nodes_.clear(); }

 private:
  struct Node {
    Tensor t;
    bool requires_grad = false;
    std::function<void(Node&)> back;
  };
  Var push(Tensor t, bool requires_grad, std::function<void(Node&)> back);
  std::deque<Node> nodes_;
};

}  // namespace epf::nn
