#include "epf/nnkit/kernels.hpp"

namespace epf::nn::ref {

void dense_forward(const double* x, const double* W, const double* b, double* y, std::size_t rows, std::size_t in,
                   std::size_t out) {
  for (std::size_t r = 0; r < rows; ++r) {
    double* yr = y + r * out;
    for (std::size_t j = 0; j < out; ++j) yr[j] = b[j];
    for (std::size_t i = 0; i < in; ++i) {
      const double xi = x[r * in + i];
      const double* wi = W + i * out;
      for (std::size_t j = 0; j < out; ++j) yr[j] += xi * wi[j];
    }
  }
}

void dense_backward_input(const double* dy, const double* Wt, double* dx, std::size_t rows, std::size_t in,
                          std::size_t out) {
  for (std::size_t r = 0; r < rows; ++r) {
    double* dxr = dx + r * in;
    for (std::size_t i = 0; i < in; ++i) dxr[i] = 0.0;
    for (std::size_t j = 0; j < out; ++j) {
      const double g = dy[r * out + j];
      const double* wj = Wt + j * in;
      for (std::size_t i = 0; i < in; ++i) dxr[i] += g * wj[i];
    }
  }
}

void dense_backward_params(const double* x, const double* dy, double* dW, double* db, std::size_t rows,
                           std::size_t in, std::size_t out) {
  for (std::size_t i = 0; i < in; ++i) {
    double* dwi = dW + i * out;
    for (std::size_t r = 0; r < rows; ++r) {
      const double xi = x[r * in + i];
      const double* dyr = dy + r * out;
      for (std::size_t j = 0; j < out; ++j) dwi[j] += xi * dyr[j];
    }
  }
  for (std::size_t r = 0; r < rows; ++r) {
    const double* dyr = dy + r * out;
    for (std::size_t j = 0; j < out; ++j) db[j] += dyr[j];
  }
}

void transpose(const double* a, double* at, std::size_t rows, std::size_t cols) {
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) at[c * rows + r] = a[r * cols + c];
}

}  // namespace epf::nn::ref
