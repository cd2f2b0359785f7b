#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "epf/core/error.hpp"
#include "epf/core/random.hpp"
#include "epf/nnkit/kernels.hpp"
#include "epf/nnkit/network.hpp"
#include "epf/nnkit/optim.hpp"
#include "epf/nnkit/serialize.hpp"
#include "epf/nnkit/tape.hpp"
#include "epf/nnkit/train.hpp"

using namespace epf;
using namespace epf::nn;

namespace {

std::vector<double> random_vec(Rng& rng, std::size_t n) {
  std::vector<double> v(n);
  for (double& x : v) x = rng.uniform(-1.0, 1.0);
  return v;
}

Samples random_samples(Rng& rng, std::size_t n, int n_cont, const std::vector<EmbeddingShape>& emb) {
  Samples s;
  s.n_continuous = n_cont;
  s.n_indices = emb.size();
  s.x = random_vec(rng, n * n_cont);
  for (std::size_t r = 0; r < n; ++r)
    for (const auto& e : emb) s.idx.push_back(static_cast<std::int32_t>(rng.index(e.vocab)));
  s.y = random_vec(rng, n);
  return s;
}

}  // namespace

TEST(Kernels, OmpMatchesReferenceBitForBit) {
  Rng rng(3);
  for (auto [rows, in, out] : {std::tuple<std::size_t, std::size_t, std::size_t>{1, 1, 1}, {7, 13, 5}, {64, 128, 128},
                               {33, 300, 17}, {64, 13, 128}}) {
    const auto x = random_vec(rng, rows * in), W = random_vec(rng, in * out), b = random_vec(rng, out),
               dy = random_vec(rng, rows * out);
    std::vector<double> y1(rows * out), y2(rows * out);
    ref::dense_forward(x.data(), W.data(), b.data(), y1.data(), rows, in, out);
    omp::dense_forward(x.data(), W.data(), b.data(), y2.data(), rows, in, out);
    EXPECT_EQ(y1, y2);

    std::vector<double> wt1(in * out), wt2(in * out);
    ref::transpose(W.data(), wt1.data(), in, out);
    omp::transpose(W.data(), wt2.data(), in, out);
    EXPECT_EQ(wt1, wt2);

    std::vector<double> dx1(rows * in), dx2(rows * in);
    ref::dense_backward_input(dy.data(), wt1.data(), dx1.data(), rows, in, out);
    omp::dense_backward_input(dy.data(), wt2.data(), dx2.data(), rows, in, out);
    EXPECT_EQ(dx1, dx2);

    std::vector<double> dW1(in * out, 0.5), dW2(in * out, 0.5), db1(out, 0.0), db2(out, 0.0);
    ref::dense_backward_params(x.data(), dy.data(), dW1.data(), db1.data(), rows, in, out);
    omp::dense_backward_params(x.data(), dy.data(), dW2.data(), db2.data(), rows, in, out);
    EXPECT_EQ(dW1, dW2);
    EXPECT_EQ(db1, db2);

    // Plain triple-loop oracle.
    for (std::size_t r = 0; r < rows; ++r)
      for (std::size_t j = 0; j < out; ++j) {
        long double s = b[j];
        for (std::size_t i = 0; i < in; ++i) s += static_cast<long double>(x[r * in + i]) * W[i * out + j];
        EXPECT_NEAR(y1[r * out + j], static_cast<double>(s), 1e-12);
      }
    for (std::size_t r = 0; r < rows; ++r)
      for (std::size_t i = 0; i < in; ++i) {
        long double s = 0;
        for (std::size_t j = 0; j < out; ++j) s += static_cast<long double>(dy[r * out + j]) * W[i * out + j];
        EXPECT_NEAR(dx1[r * in + i], static_cast<double>(s), 1e-12);
      }
    for (std::size_t i = 0; i < in; ++i)
      for (std::size_t j = 0; j < out; ++j) {
        long double s = 0.5;
        for (std::size_t r = 0; r < rows; ++r) s += static_cast<long double>(x[r * in + i]) * dy[r * out + j];
        EXPECT_NEAR(dW1[i * out + j], static_cast<double>(s), 1e-12);
      }
  }
}

TEST(Tape, ZeroNetworkPredictsZero) {
  Network net(3, {{"hour", 24, 6}}, {8, 4}, Activation::Relu);
  Rng rng(1);
  auto s = random_samples(rng, 10, 3, {{"hour", 24, 6}});
  for (double v : net.predict(s)) EXPECT_EQ(v, 0.0);
}

TEST(Tape, IdentityDenseRelu) {
  Tape tape;
  Tensor W({2, 2}, {1, 0, 0, 1}), b({2}, {0, 0});
  auto x = tape.input(Tensor({1, 2}, {-1.0, 2.0}));
  auto y = tape.relu(tape.dense(x, W, b));
  EXPECT_EQ(tape.value(y).value, (std::vector<double>{0.0, 2.0}));
}

TEST(Tape, EmbeddingLookupIsVerbatimRow) {
  Tape tape;
  Rng rng(2);
  Tensor theta({5, 3}, random_vec(rng, 15));
  auto e = tape.embedding(theta, {3, 0});
  const auto& v = tape.value(e).value;
  for (int c = 0; c < 3; ++c) {
    EXPECT_EQ(v[c], theta.value[9 + c]);
    EXPECT_EQ(v[3 + c], theta.value[c]);
  }
  EXPECT_THROW(tape.embedding(theta, {5}), LookupError);
  EXPECT_THROW(tape.embedding(theta, {-1}), LookupError);
}

TEST(Tape, ShapeMismatchThrows) {
  Network net(2, {}, {3}, Activation::Relu);
  Samples s;
  s.n_continuous = 3;
  s.x = {1, 2, 3};
  s.y = {0};
  EXPECT_THROW(net.predict(s), ShapeError);
  Tape tape;
  EXPECT_THROW(net.forward(tape, s), ShapeError);
}

TEST(Mse, Examples) {
  Tape tape;
  auto p = tape.input(Tensor({2, 1}, {0, 0}));
  EXPECT_DOUBLE_EQ(tape.value(tape.mse(p, std::vector<double>{2, 4})).value[0], 10.0);
  auto q = tape.input(Tensor({2, 1}, {1.5, -2}));
  EXPECT_EQ(tape.value(tape.mse(q, std::vector<double>{1.5, -2})).value[0], 0.0);
  Tensor empty({0, 1}, {});
  EXPECT_THROW(tape.mse(tape.input(empty), std::vector<double>{}), InvalidArgumentError);
}

TEST(Mse, GradientMatchesFiniteDifference) {
  // The gradient of a 1x1 identity dense layer's weight equals dL/dpred * x.
  Tensor W({1, 1}, {3.0}), b(std::vector<std::size_t>{1}, {0.0});
  Tape tape;
  const std::vector<double> target{1.0};
  auto pred = tape.dense(tape.input(Tensor({1, 1}, {1.0})), W, b);
  auto loss = tape.mse(pred, target);
  tape.backward(loss);
  EXPECT_DOUBLE_EQ(b.grad[0], 4.0);
  const double h = 1e-6;
  const double fd = ((3 + h - 1) * (3 + h - 1) - (3 - h - 1) * (3 - h - 1)) / (2 * h);
  EXPECT_NEAR(b.grad[0], fd, 1e-8);
}

TEST(Optim, ZeroGradientLeavesParamsAlone) {
  std::vector<double> p{1.0, -2.0}, g{0.0, 0.0};
  RmsPropState rs;
  rmsprop_step(p, g, rs, 0.01);
  EXPECT_EQ(p, (std::vector<double>{1.0, -2.0}));
  EXPECT_EQ(rs.v, (std::vector<double>{0.0, 0.0}));
  EXPECT_EQ(rs.step, 1);
  AdamState as;
  adam_step(p, g, as, 0.01);
  EXPECT_EQ(p, (std::vector<double>{1.0, -2.0}));
  EXPECT_EQ(as.m, (std::vector<double>{0.0, 0.0}));
  EXPECT_EQ(as.v, (std::vector<double>{0.0, 0.0}));
  EXPECT_EQ(as.step, 1);
}

TEST(Optim, SingleStepExamples) {
  std::vector<double> p{0.0}, g{1.0};
  RmsPropState rs;
  rmsprop_step(p, g, rs, 0.01, 0.9, 1e-8);
  EXPECT_NEAR(p[0], -0.01 / std::sqrt(0.1 + 1e-8), 1e-15);
  EXPECT_NEAR(p[0], -0.031623, 5e-7);
  p = {0.0};
  AdamState as;
  adam_step(p, g, as, 0.001, 0.9, 0.999, 1e-8);
  EXPECT_NEAR(p[0], -0.001, 1e-10);
}

TEST(Optim, DescentOnConvexQuadratic) {
  for (auto kind : {OptimizerKind::RmsProp, OptimizerKind::Adam}) {
    std::vector<double> p{2.0, -1.5, 0.7}, a{1.0, 3.0, 0.5}, c{0.0, 0.3, -0.2};
    auto f = [&] {
      double s = 0;
      for (int i = 0; i < 3; ++i) s += a[i] * (p[i] - c[i]) * (p[i] - c[i]);
      return s;
    };
    RmsPropState rs;
    AdamState as;
    double prev = f();
    const double start = prev;
    for (int step = 0; step < 100; ++step) {
      std::vector<double> g(3);
      for (int i = 0; i < 3; ++i) g[i] = 2 * a[i] * (p[i] - c[i]);
      if (kind == OptimizerKind::RmsProp) rmsprop_step(p, g, rs, 1e-3);
      else adam_step(p, g, as, 1e-3);
      const double now = f();
      EXPECT_LT(now, prev) << "step " << step;
      prev = now;
    }
    EXPECT_LT(prev, start);
  }
}

TEST(HiddenNeurons, Examples) {
  EXPECT_EQ(hidden_neurons(1000, 8, 2, 5), 20);
  EXPECT_EQ(hidden_neurons(43800, 39, 1, 2), 43800 / 80);
  EXPECT_EQ(hidden_neurons(43800, 39, 1, 2), 547);
  EXPECT_EQ(hidden_neurons(10, 100, 1, 10), 1);
}

TEST(Presets, TableValues) {
  EXPECT_EQ(preset_config(1).neurons, (std::vector<int>{2085}));
  EXPECT_EQ(preset_config(3).neurons, (std::vector<int>{2285, 1024}));
  EXPECT_EQ(preset_config(4).hidden_activation, Activation::Sigmoid);
  EXPECT_EQ(preset_config(4).optimizer, OptimizerKind::Adam);
  EXPECT_FALSE(preset_config(5).epochs.has_value());
  EXPECT_EQ(preset_config(2).epochs, 10);
  EXPECT_EQ(preset_config(2).optimizer, OptimizerKind::RmsProp);
  EXPECT_THROW(preset_config(6), InvalidArgumentError);
}

TEST(Init, ScaleBounds) {
  Network net(5, {{"a", 12, 3}, {"b", 288, 10}}, {40, 7}, Activation::Relu);
  net.initialize(9);
  for (const auto& e : net.embeddings())
    for (double v : e.theta.value) {
      EXPECT_LE(std::abs(v), 0.05);
    }
  for (const auto& l : net.layers()) {
    const double lim = std::sqrt(6.0 / (l.W.shape[0] + l.W.shape[1]));
    double mx = 0;
    for (double v : l.W.value) mx = std::max(mx, std::abs(v));
    EXPECT_LE(mx, lim);
    EXPECT_GT(mx, 0.5 * lim);
    for (double v : l.b.value) EXPECT_EQ(v, 0.0);
  }
}

TEST(Embedding, GradientRowsOutsideBatchAreZero) {
  const std::vector<EmbeddingShape> emb{{"hour", 24, 6}, {"month", 12, 3}};
  Network net(2, emb, {8}, Activation::Sigmoid);
  net.initialize(4);
  Rng rng(5);
  auto s = random_samples(rng, 6, 2, emb);
  net.zero_grad();
  Tape tape;
  tape.backward(tape.mse(net.forward(tape, s), s.y));
  for (std::size_t k = 0; k < emb.size(); ++k) {
    std::set<int> used;
    for (std::size_t r = 0; r < s.size(); ++r) used.insert(s.idx[r * 2 + k]);
    const auto& t = net.embeddings()[k];
    for (int row = 0; row < t.vocab; ++row) {
      bool nonzero = false;
      for (int c = 0; c < t.dim; ++c) nonzero = nonzero || t.theta.grad[row * t.dim + c] != 0.0;
      if (!used.count(row)) EXPECT_FALSE(nonzero) << "row " << row;
      else EXPECT_TRUE(nonzero) << "row " << row;
    }
  }
}

TEST(GradCheck, RandomNetworks) {
  for (int trial = 0; trial < 10; ++trial) {
    Rng rng(100 + trial);
    const std::vector<EmbeddingShape> emb{{"a", 7, 2}, {"b", 5, 3}};
    Network net(3, emb, {6, 5}, trial % 2 ? Activation::Sigmoid : Activation::Relu);
    net.initialize(trial);
    auto s = random_samples(rng, 4, 3, emb);
    const auto r = grad_check(net, s, 1e-5);
    EXPECT_EQ(r.checked, net.parameter_count());
    EXPECT_LT(r.max_rel_error, 1e-4) << "trial " << trial;
  }
}

TEST(GradCheck, SeededSuiteOfFifty) {
  const auto a = random_grad_checks(50, 1);
  EXPECT_EQ(a.networks, 50u);
  EXPECT_LT(a.max_rel_error, 1e-4) << "network " << a.worst;
  const auto b = random_grad_checks(50, 1);
  EXPECT_EQ(a.max_rel_error, b.max_rel_error);
  EXPECT_EQ(a.parameters, b.parameters);
}

TEST(GradCheck, LinearNetIsNearlyExact) {
  Network net(4, {}, {}, Activation::Linear);
  net.initialize(2);
  Rng rng(8);
  auto s = random_samples(rng, 9, 4, {});
  EXPECT_LT(grad_check(net, s, 1e-5).max_rel_error, 1e-7);
}

TEST(GradCheck, ZeroParameterNetIsVacuous) {
  Network net;
  Samples s;
  const auto r = grad_check(net, s, 1e-5);
  EXPECT_EQ(r.max_rel_error, 0.0);
  EXPECT_EQ(r.checked, 0u);
}

TEST(GradCheck, SubsamplesLargeNetworks) {
  Network net(3, {}, {200, 60}, Activation::Relu);
  net.initialize(1);
  Rng rng(2);
  auto s = random_samples(rng, 3, 3, {});
  const auto r = grad_check(net, s, 1e-5, 7, 500);
  EXPECT_EQ(r.checked, 500u);
  EXPECT_LT(r.max_rel_error, 1e-4);
}

TEST(Train, AffineFunctionLinearNet) {
  Samples s;
  s.n_continuous = 2;
  Rng rng(11);
  for (int i = 0; i < 50; ++i) {
    const double a = rng.uniform(-1, 1), b = rng.uniform(-1, 1);
    s.x.insert(s.x.end(), {a, b});
    s.y.push_back(3.0 * a - 2.0 * b + 0.5);
  }
  Network net(2, {}, {}, Activation::Linear);
  net.initialize(1);
  NetworkConfig cfg;
  cfg.optimizer = OptimizerKind::Adam;
  cfg.learning_rate = 0.05;
  cfg.batch_size = 5;
  cfg.epochs = 200;
  const auto res = train(net, s, cfg);
  EXPECT_EQ(res.epochs_run, 200);
  EXPECT_LT(net.loss(s), 1e-6);
}

TEST(Train, ZeroEpochsLeavesNetwork) {
  Network net(2, {{"h", 24, 6}}, {5}, Activation::Relu);
  net.initialize(3);
  const auto before = net.flat();
  Rng rng(1);
  auto s = random_samples(rng, 20, 2, {{"h", 24, 6}});
  NetworkConfig cfg;
  cfg.epochs = 0;
  train(net, s, cfg);
  EXPECT_EQ(net.flat(), before);
}

TEST(Train, DeterministicGivenSeed) {
  const std::vector<EmbeddingShape> emb{{"h", 24, 6}};
  Rng rng(1);
  auto s = random_samples(rng, 300, 2, emb);
  NetworkConfig cfg;
  cfg.neurons = {16, 8};
  cfg.epochs = 3;
  cfg.seed = 42;
  auto run = [&] {
    Network net(2, emb, cfg.neurons, cfg.hidden_activation);
    net.initialize(cfg.seed);
    train(net, s, cfg);
    return net.flat();
  };
  const auto a = run(), b = run();
  EXPECT_EQ(a, b);
  cfg.seed = 43;
  EXPECT_NE(run(), a);
}

TEST(Train, EarlyStoppingRestoresBestWeights) {
  const std::vector<EmbeddingShape> emb{{"h", 24, 6}};
  Rng rng(6);
  auto s = random_samples(rng, 400, 2, emb);
  NetworkConfig cfg = preset_config(5);
  cfg.neurons = {16, 16};
  cfg.early_stop_patience = 3;
  cfg.max_epochs = 40;
  Network net(2, emb, cfg.neurons, cfg.hidden_activation);
  net.initialize(1);
  const auto res = train(net, s, cfg);
  ASSERT_EQ(res.val_loss.size(), static_cast<std::size_t>(res.epochs_run));
  ASSERT_GE(res.best_epoch, 0);
  const double best = *std::min_element(res.val_loss.begin(), res.val_loss.end());
  EXPECT_EQ(res.val_loss[res.best_epoch], best);
  EXPECT_TRUE(res.epochs_run == cfg.max_epochs || res.epochs_run == res.best_epoch + 1 + cfg.early_stop_patience);
  // Held-out tail is the last 40 samples.
  EXPECT_DOUBLE_EQ(net.loss(s.range(360, 40)), best);
}

TEST(Train, DivergenceNamesEpoch) {
  Samples s;
  s.n_continuous = 1;
  s.x = {1e200, -1e200};
  s.y = {1e200, 1e200};
  Network net(1, {}, {}, Activation::Linear);
  net.initialize(1);
  NetworkConfig cfg;
  cfg.epochs = 2;
  try {
    train(net, s, cfg);
    FAIL() << "expected divergence";
  } catch (const DivergenceError& e) {
    EXPECT_NE(std::string(e.what()).find("epoch 1"), std::string::npos);
  }
}

TEST(Serialize, RoundTripIsExact) {
  const std::vector<EmbeddingShape> emb{{"hour", 24, 6}, {"month", 12, 3}};
  Network net(2, emb, {7, 3}, Activation::Sigmoid);
  net.initialize(77);
  const auto j = to_json(net);
  EXPECT_EQ(j["version"], kNetworkFormatVersion);
  const Network back = network_from_json(nlohmann::json::parse(j.dump()));
  EXPECT_EQ(back.flat(), net.flat());
  Rng rng(3);
  auto s = random_samples(rng, 5, 2, emb);
  EXPECT_EQ(back.predict(s), net.predict(s));
  auto bad = j;
  bad["version"] = 99;
  EXPECT_THROW(network_from_json(bad), ParseError);

  NetworkConfig c = preset_config(4);
  const auto c2 = config_from_json(to_json(c));
  EXPECT_EQ(c2.neurons, c.neurons);
  EXPECT_FALSE(c2.epochs.has_value());
  EXPECT_EQ(c2.hidden_activation, Activation::Sigmoid);
}
