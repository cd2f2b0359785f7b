#include <benchmark/benchmark.h>

#include <vector>

#include "epf/core/random.hpp"
#include "epf/nnkit/kernels.hpp"
#include "epf/nnkit/network.hpp"
#include "epf/nnkit/train.hpp"

using namespace epf;
using namespace epf::nn;

namespace {

struct Buffers {
  std::size_t rows, in, out;
  std::vector<double> x, W, Wt, b, y, dy, dx, dW, db;
  Buffers(std::size_t r, std::size_t i, std::size_t o)
      : rows(r), in(i), out(o), x(r * i), W(i * o), Wt(i * o), b(o), y(r * o), dy(r * o), dx(r * i), dW(i * o),
        db(o) {
    Rng rng(1);
    for (auto* v : {&x, &W, &b, &dy})
      for (double& e : *v) e = rng.uniform(-1, 1);
  }
};

template <bool Omp>
void BM_DenseForward(benchmark::State& st) {
  Buffers B(st.range(0), st.range(1), st.range(2));
  for (auto _ : st) {
    if constexpr (Omp) omp::dense_forward(B.x.data(), B.W.data(), B.b.data(), B.y.data(), B.rows, B.in, B.out);
    else ref::dense_forward(B.x.data(), B.W.data(), B.b.data(), B.y.data(), B.rows, B.in, B.out);
    benchmark::DoNotOptimize(B.y.data());
  }
  st.counters["MAC/s"] = benchmark::Counter(double(B.rows * B.in * B.out) * st.iterations(), benchmark::Counter::kIsRate);
}

template <bool Omp>
void BM_DenseBackward(benchmark::State& st) {
  Buffers B(st.range(0), st.range(1), st.range(2));
  for (auto _ : st) {
    if constexpr (Omp) {
      omp::transpose(B.W.data(), B.Wt.data(), B.in, B.out);
      omp::dense_backward_input(B.dy.data(), B.Wt.data(), B.dx.data(), B.rows, B.in, B.out);
      omp::dense_backward_params(B.x.data(), B.dy.data(), B.dW.data(), B.db.data(), B.rows, B.in, B.out);
    } else {
      ref::transpose(B.W.data(), B.Wt.data(), B.in, B.out);
      ref::dense_backward_input(B.dy.data(), B.Wt.data(), B.dx.data(), B.rows, B.in, B.out);
      ref::dense_backward_params(B.x.data(), B.dy.data(), B.dW.data(), B.db.data(), B.rows, B.in, B.out);
    }
    benchmark::DoNotOptimize(B.dW.data());
  }
  st.counters["MAC/s"] =
      benchmark::Counter(2.0 * double(B.rows * B.in * B.out) * st.iterations(), benchmark::Counter::kIsRate);
}

void shapes(benchmark::internal::Benchmark* b) {
  b->Args({64, 13, 128})->Args({64, 128, 128})->Args({64, 2285, 1024})->Args({1024, 128, 128});
}

// One epoch of the c2 embedding network on a 5-year-sized sample set.
void BM_TrainEpochC2(benchmark::State& st) {
  const std::vector<EmbeddingShape> emb{{"hour", 24, 6}, {"weekday10", 10, 2}, {"month", 12, 3}};
  Samples s;
  s.n_continuous = 2;
  s.n_indices = 3;
  Rng rng(2);
  const std::size_t n = 43824;
  for (std::size_t r = 0; r < n; ++r) {
    s.x.push_back(rng.uniform(-1, 1));
    s.x.push_back(rng.uniform(-1, 1));
    s.idx.push_back(r % 24);
    s.idx.push_back((r / 24) % 7);
    s.idx.push_back((r / 730) % 12);
    s.y.push_back(rng.uniform(20, 60));
  }
  NetworkConfig cfg = preset_config(2);
  cfg.epochs = 1;
  for (auto _ : st) {
    Network net(2, emb, cfg.neurons, cfg.hidden_activation);
    net.initialize(1);
    train(net, s, cfg);
  }
}

}  // namespace

BENCHMARK(BM_DenseForward<false>)->Name("dense_forward/ref")->Apply(shapes);
BENCHMARK(BM_DenseForward<true>)->Name("dense_forward/omp")->Apply(shapes);
BENCHMARK(BM_DenseBackward<false>)->Name("dense_backward/ref")->Apply(shapes);
BENCHMARK(BM_DenseBackward<true>)->Name("dense_backward/omp")->Apply(shapes);
BENCHMARK(BM_TrainEpochC2)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
