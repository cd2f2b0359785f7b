#pragma once

#include <cstddef>
#include <functional>
#include <numeric>
#include <vector>

namespace epf::nn {

// Row-major dense array. Gradient storage is allocated on first use.
struct Tensor {
  std::vector<std::size_t> shape;
  std::vector<double> value;
  std::vector<double> grad;

  Tensor() = default;
  Tensor(std::size_t rows, std::size_t cols) : shape{rows, cols}, value(rows * cols, 0.0) {}
  Tensor(std::vector<std::size_t> dims, std::vector<double> v) : shape(std::move(dims)), value(std::move(v)) {}

  std::size_t size() const { return value.size(); }
  std::size_t rows() const { return shape.empty() ? 0 : shape[0]; }
  std::size_t cols() const {
    return shape.size() < 2 ? 1 : std::accumulate(shape.begin() + 1, shape.end(), std::size_t{1}, std::multiplies<>());
  }

  std::vector<double>& ensure_grad() {
    if (grad.size() != value.size()) grad.assign(value.size(), 0.0);
    return grad;
  }
  void zero_grad() { grad.assign(value.size(), 0.0); }
  bool has_grad() const { return grad.size() == value.size() && !value.empty(); }
};

}  // namespace epf::nn
