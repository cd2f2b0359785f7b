#include "epf/nnkit/train.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "epf/core/error.hpp"
#include "epf/core/random.hpp"
#include "epf/nnkit/optim.hpp"

namespace epf::nn {

namespace {

double run_epoch(Network& net, const Samples& data, std::vector<std::size_t>& order, Rng& rng, Optimizer& opt,
                 int batch_size, int epoch) {
  rng.shuffle(std::span<std::size_t>(order));
  const auto params = net.parameters();
  double total = 0.0;
  std::size_t seen = 0;
  Tape tape;
  for (std::size_t first = 0; first < order.size(); first += batch_size) {
    const std::size_t count = std::min<std::size_t>(batch_size, order.size() - first);
    const Samples batch = data.gather(std::span<const std::size_t>(order).subspan(first, count));
    for (Tensor* p : params) p->zero_grad();
    tape.clear();
    const auto loss = tape.mse(net.forward(tape, batch), batch.y);
    const double l = tape.value(loss).value[0];
    if (!std::isfinite(l))
      throw DivergenceError("nnkit", "loss became " + std::to_string(l) + " in epoch " + std::to_string(epoch + 1));
    tape.backward(loss);
    opt.step(params);
    total += l * static_cast<double>(count);
    seen += count;
  }
  return total / static_cast<double>(seen);
}

}  // namespace

TrainResult train(Network& net, const Samples& samples, const NetworkConfig& cfg) {
  cfg.validate();
  TrainResult res;
  if (cfg.epochs && *cfg.epochs == 0) return res;
  const std::size_t n = samples.size();
  if (n == 0) throw InvalidArgumentError("nnkit", "training needs at least one sample");

  Rng rng(cfg.seed ^ 0x5eedULL);
  Optimizer opt(cfg);

  if (cfg.epochs) {
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    for (int e = 0; e < *cfg.epochs; ++e) {
      res.train_loss.push_back(run_epoch(net, samples, order, rng, opt, cfg.batch_size, e));
      ++res.epochs_run;
    }
    return res;
  }

  std::size_t n_val = static_cast<std::size_t>(std::floor(cfg.validation_fraction * static_cast<double>(n)));
  if (n >= 2) n_val = std::clamp<std::size_t>(n_val, 1, n - 1);
  else n_val = 0;
  const std::size_t n_train = n - n_val;
  const Samples train_part = samples.range(0, n_train);
  const Samples val_part = n_val > 0 ? samples.range(n_train, n_val) : train_part;

  std::vector<std::size_t> order(n_train);
  std::iota(order.begin(), order.end(), 0);
  double best = std::numeric_limits<double>::infinity();
  std::vector<double> best_w = net.flat();
  int since = 0;
  for (int e = 0; e < cfg.max_epochs; ++e) {
    res.train_loss.push_back(run_epoch(net, train_part, order, rng, opt, cfg.batch_size, e));
    ++res.epochs_run;
    const double v = net.loss(val_part);
    if (!std::isfinite(v))
      throw DivergenceError("nnkit", "validation loss became " + std::to_string(v) + " in epoch " +
                                         std::to_string(e + 1));
    res.val_loss.push_back(v);
    if (v < best) {
      best = v;
      best_w = net.flat();
      res.best_epoch = e;
      since = 0;
    } else if (++since >= cfg.early_stop_patience) {
      break;
    }
  }
  net.set_flat(best_w);
  return res;
}

GradCheckResult grad_check(Network& net, const Samples& batch, double epsilon, std::uint64_t seed,
                           std::size_t max_params) {
  if (!(epsilon > 0.0)) throw InvalidArgumentError("nnkit", "grad_check epsilon must be positive");
  GradCheckResult res;
  const std::size_t total = net.parameter_count();
  if (total == 0) return res;

  net.zero_grad();
  Tape tape;
  const auto loss = tape.mse(net.forward(tape, batch), batch.y);
  tape.backward(loss);

  // Address parameters through a flat index.
  const auto params = net.parameters();
  std::vector<std::pair<Tensor*, std::size_t>> where;
  where.reserve(total);
  for (Tensor* p : params)
    for (std::size_t k = 0; k < p->size(); ++k) where.emplace_back(p, k);

  std::vector<std::size_t> pick(total);
  std::iota(pick.begin(), pick.end(), 0);
  if (total > max_params) {
    Rng rng(seed);
    rng.shuffle(std::span<std::size_t>(pick));
    pick.resize(max_params);
    std::sort(pick.begin(), pick.end());
  }

  for (std::size_t i : pick) {
    auto [t, k] = where[i];
    const double analytic = t->has_grad() ? t->grad[k] : 0.0;
    const double saved = t->value[k];
    t->value[k] = saved + epsilon;
    const double up = net.loss(batch);
    t->value[k] = saved - epsilon;
    const double down = net.loss(batch);
    t->value[k] = saved;
    const double numeric = (up - down) / (2.0 * epsilon);
    const double denom = std::max({std::abs(analytic), std::abs(numeric), 1e-7});
    res.max_rel_error = std::max(res.max_rel_error, std::abs(analytic - numeric) / denom);
    ++res.checked;
  }
  return res;
}

GradCheckSuite random_grad_checks(std::size_t count, std::uint64_t seed) {
  GradCheckSuite suite;
  for (std::size_t i = 0; i < count; ++i) {
    Rng rng(seed + i);
    const int n_cont = 1 + static_cast<int>(rng.index(4));
    std::vector<EmbeddingShape> emb;
    const auto n_emb = rng.index(3);
    for (std::size_t e = 0; e < n_emb; ++e)
      emb.push_back({"e" + std::to_string(e), 2 + static_cast<int>(rng.index(10)), 1 + static_cast<int>(rng.index(4))});
    std::vector<int> hidden;
    const auto depth = rng.index(3);
    for (std::size_t l = 0; l < depth; ++l) hidden.push_back(2 + static_cast<int>(rng.index(6)));
    const auto act = rng.index(2) ? Activation::Sigmoid : Activation::Relu;

    Network net(n_cont, emb, hidden, act);
    net.initialize(rng.next());
    Samples s;
    s.n_continuous = n_cont;
    s.n_indices = emb.size();
    const std::size_t rows = 3 + rng.index(5);
    for (std::size_t r = 0; r < rows; ++r) {
      for (int c = 0; c < n_cont; ++c) s.x.push_back(rng.uniform(-1.0, 1.0));
      for (const auto& e : emb) s.idx.push_back(static_cast<std::int32_t>(rng.index(e.vocab)));
      s.y.push_back(rng.uniform(-1.0, 1.0));
    }
    const auto r = grad_check(net, s, 1e-5, seed + i);
    suite.parameters += r.checked;
    if (i == 0 || r.max_rel_error > suite.max_rel_error) {
      suite.max_rel_error = r.max_rel_error;
      suite.worst = i;
    }
    ++suite.networks;
  }
  return suite;
}

}  // namespace epf::nn
