#include <cstdint>
#include <vector>

#include "epf/nnkit/kernels.hpp"

namespace epf::nn::omp {

namespace {

// Below this many multiply-adds a parallel region costs more than it saves.
constexpr std::size_t kMinWork = 1 << 15;

constexpr std::size_t MR = 4;
constexpr std::size_t NR = 16;

// C[m][n] += sum_k A(m,k) B[k][n] for an MR x NR tile, k ascending. A(m,k)
// lives at A[m*sam + k*sak] so the same tile serves x W and x^T dy. The
// per-element summation order equals the plain loops in ref::.
inline void tile(const double* A, std::size_t sam, std::size_t sak, const double* B, std::size_t ldb, double* C,
                 std::size_t ldc, std::size_t K) {
  double acc[MR][NR];
  for (std::size_t m = 0; m < MR; ++m)
    for (std::size_t n = 0; n < NR; ++n) acc[m][n] = C[m * ldc + n];
  for (std::size_t k = 0; k < K; ++k) {
    const double* b = B + k * ldb;
    for (std::size_t m = 0; m < MR; ++m) {
      const double a = A[m * sam + k * sak];
#pragma omp simd
      for (std::size_t n = 0; n < NR; ++n) acc[m][n] += a * b[n];
    }
  }
  for (std::size_t m = 0; m < MR; ++m)
    for (std::size_t n = 0; n < NR; ++n) C[m * ldc + n] = acc[m][n];
}

// Tile with mr <= MR live rows and nr <= NR live columns. B must be padded to
// NR columns (row stride NR); padded lanes are computed and discarded.
inline void edge(const double* A, std::size_t sam, std::size_t sak, const double* Bp, double* C, std::size_t ldc,
                 std::size_t K, std::size_t mr, std::size_t nr) {
  double acc[MR][NR] = {};
  for (std::size_t m = 0; m < mr; ++m)
    for (std::size_t n = 0; n < nr; ++n) acc[m][n] = C[m * ldc + n];
  for (std::size_t k = 0; k < K; ++k) {
    const double* b = Bp + k * NR;
    for (std::size_t m = 0; m < mr; ++m) {
      const double a = A[m * sam + k * sak];
#pragma omp simd
      for (std::size_t n = 0; n < NR; ++n) acc[m][n] += a * b[n];
    }
  }
  for (std::size_t m = 0; m < mr; ++m)
    for (std::size_t n = 0; n < nr; ++n) C[m * ldc + n] = acc[m][n];
}

// C (M x N, row stride N) += A B with B (K x N).
void gemm_acc(const double* A, std::size_t sam, std::size_t sak, const double* B, double* C, std::size_t M,
              std::size_t N, std::size_t K) {
  const std::size_t n_full = N / NR * NR;
  const std::size_t nr = N - n_full;
  // Trailing columns of B, zero-padded to a full tile width.
  std::vector<double> Bp(nr ? K * NR : 0, 0.0);
  for (std::size_t k = 0; nr && k < K; ++k)
    for (std::size_t n = 0; n < nr; ++n) Bp[k * NR + n] = B[k * N + n_full + n];
  const auto blocks = static_cast<std::int64_t>((M + MR - 1) / MR);
#pragma omp parallel for schedule(static) if (M * N * K >= kMinWork)
  for (std::int64_t blk = 0; blk < blocks; ++blk) {
    const std::size_t m0 = static_cast<std::size_t>(blk) * MR;
    const std::size_t mr = M - m0 < MR ? M - m0 : MR;
    const double* a = A + m0 * sam;
    double* c = C + m0 * N;
    for (std::size_t n0 = 0; n0 < n_full; n0 += NR) {
      if (mr == MR) tile(a, sam, sak, B + n0, N, c + n0, N, K);
      else {
        // Pad this column block as well for the short row tile.
        double* dst = c + n0;
        for (std::size_t m = 0; m < mr; ++m)
          for (std::size_t k = 0; k < K; ++k) {
            const double av = a[m * sam + k * sak];
            const double* b = B + k * N + n0;
#pragma omp simd
            for (std::size_t n = 0; n < NR; ++n) dst[m * N + n] += av * b[n];
          }
      }
    }
    if (nr) edge(a, sam, sak, Bp.data(), c + n_full, N, K, mr, nr);
  }
}

}  // namespace

void dense_forward(const double* x, const double* W, const double* b, double* y, std::size_t rows, std::size_t in,
                   std::size_t out) {
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t j = 0; j < out; ++j) y[r * out + j] = b[j];
  gemm_acc(x, in, 1, W, y, rows, out, in);
}

void dense_backward_input(const double* dy, const double* Wt, double* dx, std::size_t rows, std::size_t in,
                          std::size_t out) {
  for (std::size_t k = 0; k < rows * in; ++k) dx[k] = 0.0;
  gemm_acc(dy, out, 1, Wt, dx, rows, in, out);
}

void dense_backward_params(const double* x, const double* dy, double* dW, double* db, std::size_t rows,
                           std::size_t in, std::size_t out) {
  gemm_acc(x, 1, in, dy, dW, in, out, rows);
  for (std::size_t r = 0; r < rows; ++r) {
    const double* dyr = dy + r * out;
    for (std::size_t j = 0; j < out; ++j) db[j] += dyr[j];
  }
}

void transpose(const double* a, double* at, std::size_t rows, std::size_t cols) {
  const auto n = static_cast<std::int64_t>(cols);
#pragma omp parallel for schedule(static) if (rows * cols >= kMinWork)
  for (std::int64_t c = 0; c < n; ++c)
    for (std::size_t r = 0; r < rows; ++r) at[c * rows + r] = a[r * cols + c];
}

}  // namespace epf::nn::omp
