#include "epf/nnkit/tape.hpp"

#include <cmath>
#include <string>

#include "epf/core/error.hpp"
#include "epf/nnkit/kernels.hpp"

namespace epf::nn {

namespace {

void check(bool ok, const std::string& what) {
  if (!ok) throw ShapeError("nnkit", what);
}

}  // namespace

Tape::Var Tape::push(Tensor t, bool requires_grad, std::function<void(Node&)> back) {
  nodes_.push_back(Node{std::move(t), requires_grad, std::move(back)});
  return nodes_.size() - 1;
}

Tape::Var Tape::input(Tensor value) {
  check(value.shape.size() == 2 && value.size() == value.shape[0] * value.shape[1], "input must be a 2-D tensor");
  return push(std::move(value), false, nullptr);
}

Tape::Var Tape::dense(Var xv, Tensor& W, Tensor& b) {
  const Tensor& x = nodes_[xv].t;
  const std::size_t rows = x.rows(), in = x.cols();
  check(W.shape.size() == 2 && W.shape[0] == in, "dense input width " + std::to_string(in) + " does not match weights");
  const std::size_t out = W.shape[1];
  check(b.size() == out, "dense bias length mismatch");
  Tensor y(rows, out);
  omp::dense_forward(x.value.data(), W.value.data(), b.value.data(), y.value.data(), rows, in, out);
  const bool x_grad = nodes_[xv].requires_grad;
  return push(std::move(y), true, [this, xv, &W, &b, rows, in, out, x_grad](Node& self) {
    Node& xn = nodes_[xv];
    W.ensure_grad();
    b.ensure_grad();
    omp::dense_backward_params(xn.t.value.data(), self.t.grad.data(), W.grad.data(), b.grad.data(), rows, in, out);
    if (!x_grad) return;
    std::vector<double> Wt(in * out), dx(rows * in);
    omp::transpose(W.value.data(), Wt.data(), in, out);
    omp::dense_backward_input(self.t.grad.data(), Wt.data(), dx.data(), rows, in, out);
    auto& g = xn.t.ensure_grad();
    for (std::size_t k = 0; k < g.size(); ++k) g[k] += dx[k];
  });
}

Tape::Var Tape::relu(Var xv) {
  Tensor y = nodes_[xv].t;
  y.grad.clear();
  for (double& v : y.value) v = v > 0.0 ? v : 0.0;
  const bool x_grad = nodes_[xv].requires_grad;
  return push(std::move(y), x_grad, [this, xv](Node& self) {
    auto& g = nodes_[xv].t.ensure_grad();
    for (std::size_t k = 0; k < g.size(); ++k)
      if (self.t.value[k] > 0.0) g[k] += self.t.grad[k];
  });
}

Tape::Var Tape::sigmoid(Var xv) {
  Tensor y = nodes_[xv].t;
  y.grad.clear();
  for (double& v : y.value) v = 1.0 / (1.0 + std::exp(-v));
  const bool x_grad = nodes_[xv].requires_grad;
  return push(std::move(y), x_grad, [this, xv](Node& self) {
    auto& g = nodes_[xv].t.ensure_grad();
    for (std::size_t k = 0; k < g.size(); ++k) {
      const double s = self.t.value[k];
      g[k] += self.t.grad[k] * s * (1.0 - s);
    }
  });
}

Tape::Var Tape::embedding(Tensor& theta, std::vector<std::int32_t> indices) {
  check(theta.shape.size() == 2, "embedding table must be 2-D");
  const std::size_t vocab = theta.shape[0], dim = theta.shape[1];
  Tensor y(indices.size(), dim);
  for (std::size_t r = 0; r < indices.size(); ++r) {
    const auto ix = indices[r];
    if (ix < 0 || static_cast<std::size_t>(ix) >= vocab)
      throw LookupError("nnkit", "embedding index " + std::to_string(ix) + " outside vocabulary of " +
                                     std::to_string(vocab));
    for (std::size_t c = 0; c < dim; ++c) y.value[r * dim + c] = theta.value[ix * dim + c];
  }
  return push(std::move(y), true, [&theta, dim, idx = std::move(indices)](Node& self) {
    auto& g = theta.ensure_grad();
    for (std::size_t r = 0; r < idx.size(); ++r)
      for (std::size_t c = 0; c < dim; ++c) g[idx[r] * dim + c] += self.t.grad[r * dim + c];
  });
}

Tape::Var Tape::concat(std::span<const Var> parts) {
  check(!parts.empty(), "concat of nothing");
  const std::size_t rows = nodes_[parts[0]].t.rows();
  std::size_t width = 0;
  bool any_grad = false;
  for (Var p : parts) {
    check(nodes_[p].t.rows() == rows, "concat row mismatch");
    width += nodes_[p].t.cols();
    any_grad = any_grad || nodes_[p].requires_grad;
  }
  Tensor y(rows, width);
  std::size_t off = 0;
  for (Var p : parts) {
    const Tensor& t = nodes_[p].t;
    const std::size_t w = t.cols();
    for (std::size_t r = 0; r < rows; ++r)
      for (std::size_t c = 0; c < w; ++c) y.value[r * width + off + c] = t.value[r * w + c];
    off += w;
  }
  std::vector<Var> ps(parts.begin(), parts.end());
  return push(std::move(y), any_grad, [this, ps, rows, width](Node& self) {
    std::size_t o = 0;
    for (Var p : ps) {
      Node& n = nodes_[p];
      const std::size_t w = n.t.cols();
      if (n.requires_grad) {
        auto& g = n.t.ensure_grad();
        for (std::size_t r = 0; r < rows; ++r)
          for (std::size_t c = 0; c < w; ++c) g[r * w + c] += self.t.grad[r * width + o + c];
      }
      o += w;
    }
  });
}

Tape::Var Tape::mse(Var pv, std::span<const double> target) {
  const Tensor& p = nodes_[pv].t;
  if (p.size() == 0) throw InvalidArgumentError("nnkit", "mse of an empty prediction");
  check(p.size() == target.size(), "mse length mismatch");
  double s = 0.0;
  for (std::size_t k = 0; k < p.size(); ++k) {
    const double d = p.value[k] - target[k];
    s += d * d;
  }
  const double n = static_cast<double>(p.size());
  std::vector<double> t(target.begin(), target.end());
  return push(Tensor({1, 1}, {s / n}), nodes_[pv].requires_grad, [this, pv, t = std::move(t), n](Node& self) {
    Node& pn = nodes_[pv];
    auto& g = pn.t.ensure_grad();
    const double up = self.t.grad[0];
    for (std::size_t k = 0; k < g.size(); ++k) g[k] += up * 2.0 * (pn.t.value[k] - t[k]) / n;
  });
}

void Tape::backward(Var loss) {
  check(nodes_[loss].t.size() == 1, "backward needs a scalar loss");
  nodes_[loss].t.ensure_grad()[0] = 1.0;
  for (std::size_t k = loss + 1; k-- > 0;) {
    Node& n = nodes_[k];
    if (!n.requires_grad || !n.back) continue;
    // Nodes that never received gradient contribute nothing.
    if (n.t.grad.size() != n.t.value.size()) continue;
    n.back(n);
  }
}

}  // namespace epf::nn
