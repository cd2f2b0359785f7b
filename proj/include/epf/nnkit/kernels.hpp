#pragma once

#include <cstddef>

// Dense-layer kernels. Each output row belongs to exactly one thread and the
// inner accumulation order is fixed, so the OpenMP variants match the serial
// reference bit for bit whatever the thread count.
//
// Layout: x is rows x in, W is in x out, y is rows x out, all row-major.

namespace epf::nn {

namespace ref {
// y = x W + b
void dense_forward(const double* x, const double* W, const double* b, double* y, std::size_t rows, std::size_t in,
                   std::size_t out);
// dx = dy W^T, where Wt is the out x in transpose of W.
void dense_backward_input(const double* dy, const double* Wt, double* dx, std::size_t rows, std::size_t in,
                          std::size_t out);
// dW += x^T dy, db += column sums of dy
void dense_backward_params(const double* x, const double* dy, double* dW, double* db, std::size_t rows,
                           std::size_t in, std::size_t out);
void transpose(const double* a, double* at, std::size_t rows, std::size_t cols);
}  // namespace ref

namespace omp {
// y = x W + b
void dense_forward(const double* x, const double* W, const double* b, double* y, std::size_t rows, std::size_t in,
                   std::size_t out);
// dx = dy W^T, where Wt is the out x in transpose of W.
void dense_backward_input(const double* dy, const double* Wt, double* dx, std::size_t rows, std::size_t in,
                          std::size_t out);
// dW += x^T dy, db += column sums of dy
void dense_backward_params(const double* x, const double* dy, double* dW, double* db, std::size_t rows,
                           std::size_t in, std::size_t out);
void transpose(const double* a, double* at, std::size_t rows, std::size_t cols);
}  // namespace omp

}  // namespace epf::nn
