#include "epf/stats/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "epf/core/error.hpp"

namespace epf::stats {

void ScoreMatrix::validate() const {
  if (k() < 2) throw InvalidArgumentError("stats", "need at least two methods");
  if (n() < 2) throw InvalidArgumentError("stats", "need at least two samples");
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != k())
      throw InvalidArgumentError("stats", "sample " + std::to_string(i) + " has " + std::to_string(rows[i].size()) +
                                              " values for " + std::to_string(k()) + " methods");
    for (double v : rows[i])
      if (!std::isfinite(v)) throw InvalidArgumentError("stats", "sample " + std::to_string(i) + " has a missing cell");
  }
}

namespace {

// Average ranks (1-based) of v.
std::vector<double> average_ranks(const std::vector<double>& v) {
  std::vector<std::size_t> idx(v.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
  std::vector<double> r(v.size());
  for (std::size_t i = 0; i < idx.size();) {
    std::size_t j = i;
    while (j + 1 < idx.size() && v[idx[j + 1]] == v[idx[i]]) ++j;
    const double avg = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t t = i; t <= j; ++t) r[idx[t]] = avg;
    i = j + 1;
  }
  return r;
}

std::vector<std::size_t> rank_order(const std::vector<double>& avg_rank, const std::vector<std::string>& names) {
  std::vector<std::size_t> o(avg_rank.size());
  std::iota(o.begin(), o.end(), 0);
  std::stable_sort(o.begin(), o.end(), [&](std::size_t a, std::size_t b) {
    return avg_rank[a] != avg_rank[b] ? avg_rank[a] < avg_rank[b] : names[a] < names[b];
  });
  return o;
}

}  // namespace

FriedmanResult friedman_aligned(const ScoreMatrix& m) {
  m.validate();
  const std::size_t n = m.n(), k = m.k();
  const double first = m.rows[0][0];
  bool all_same = true;
  for (const auto& row : m.rows)
    for (double v : row) all_same = all_same && v == first;
  if (all_same) throw DegenerateScaleError("stats", "all scores are identical");

  std::vector<double> aligned(n * k);
  for (std::size_t i = 0; i < n; ++i) {
    const double mean = std::accumulate(m.rows[i].begin(), m.rows[i].end(), 0.0) / static_cast<double>(k);
    for (std::size_t j = 0; j < k; ++j) aligned[i * k + j] = m.rows[i][j] - mean;
  }
  const auto r = average_ranks(aligned);
  std::vector<double> col(k, 0.0), row(n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      col[j] += r[i * k + j];
      row[i] += r[i * k + j];
    }
  FriedmanResult res;
  res.avg_rank.resize(k);
  for (std::size_t j = 0; j < k; ++j) res.avg_rank[j] = col[j] / static_cast<double>(n);

  const double kd = static_cast<double>(k), nd = static_cast<double>(n), N = kd * nd;
  // Swapping two columns inside one row leaves the null distribution
  // unchanged, so Var(r_ia - r_ib) = 2k/(k-1) times the row's rank variance.
  double within = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double mean = row[i] / kd;
    for (std::size_t j = 0; j < k; ++j) within += (r[i * k + j] - mean) * (r[i * k + j] - mean) / kd;
  }
  res.pair_se = std::sqrt(2.0 * kd / (kd - 1.0) * within) / nd;
  double sc = 0.0, sr = 0.0;
  for (double c : col) sc += c * c;
  for (double v : row) sr += v * v;
  const double num = (kd - 1.0) * (sc - kd * nd * nd / 4.0 * (N + 1.0) * (N + 1.0));
  const double den = N * (N + 1.0) * (2.0 * N + 1.0) / 6.0 - sr / kd;
  if (!(den > 0.0)) throw DegenerateScaleError("stats", "aligned ranks have no spread");
  res.statistic = std::max(0.0, num / den);
  res.p_value = chi2_sf(res.statistic, kd - 1.0);
  return res;
}

std::vector<double> holm_adjust(std::span<const double> raw) {
  const std::size_t m = raw.size();
  for (double p : raw)
    if (!(p >= 0.0 && p <= 1.0)) throw InvalidArgumentError("stats", "p-values must lie in [0, 1]");
  std::vector<std::size_t> idx(m);
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return raw[a] < raw[b]; });
  std::vector<double> adj(m);
  double running = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    running = std::max(running, std::min(1.0, static_cast<double>(m - i) * raw[idx[i]]));
    adj[idx[i]] = running;
  }
  return adj;
}

double pairwise_z(double rank_i, double rank_j, double pair_se) {
  if (!(pair_se > 0.0)) return rank_i == rank_j ? 0.0 : std::copysign(INFINITY, rank_i - rank_j);
  return (rank_i - rank_j) / pair_se;
}

RankingReport holm_vs_control(const ScoreMatrix& m, const std::optional<std::string>& control) {
  const auto fr = friedman_aligned(m);
  const auto order = rank_order(fr.avg_rank, m.methods);
  std::size_t c = order.front();
  if (control) {
    const auto it = std::find(m.methods.begin(), m.methods.end(), *control);
    if (it == m.methods.end()) throw LookupError("stats", "control method '" + *control + "' is not in the matrix");
    c = static_cast<std::size_t>(it - m.methods.begin());
  }
  RankingReport rep;
  rep.statistic = fr.statistic;
  rep.p_value = fr.p_value;
  rep.control = m.methods[c];
  std::vector<double> raw;
  for (std::size_t j : order) {
    rep.methods.push_back(m.methods[j]);
    rep.avg_rank.push_back(fr.avg_rank[j]);
    if (j == c) continue;
    raw.push_back(2.0 * normal_sf(std::abs(pairwise_z(fr.avg_rank[j], fr.avg_rank[c], fr.pair_se))));
  }
  const auto adj = holm_adjust(raw);
  std::size_t t = 0;
  for (std::size_t j : order) {
    if (j == c) {
      rep.raw_p.push_back(std::numeric_limits<double>::quiet_NaN());
      rep.adjusted_p.push_back(std::numeric_limits<double>::quiet_NaN());
    } else {
      rep.raw_p.push_back(raw[t]);
      rep.adjusted_p.push_back(adj[t]);
      ++t;
    }
  }
  return rep;
}

PairwiseMatrix pairwise_matrix(const ScoreMatrix& m) {
  const auto fr = friedman_aligned(m);
  const auto order = rank_order(fr.avg_rank, m.methods);
  const std::size_t k = m.k();
  std::vector<double> raw;
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = a + 1; b < k; ++b) {
      pairs.emplace_back(a, b);
      raw.push_back(2.0 * normal_sf(std::abs(pairwise_z(fr.avg_rank[order[a]], fr.avg_rank[order[b]], fr.pair_se))));
    }
  const auto adj = holm_adjust(raw);
  PairwiseMatrix pm;
  for (std::size_t j : order) pm.order.push_back(m.methods[j]);
  pm.p.assign(k, std::vector<double>(k, 1.0));
  for (std::size_t t = 0; t < pairs.size(); ++t) {
    pm.p[pairs[t].first][pairs[t].second] = adj[t];
    pm.p[pairs[t].second][pairs[t].first] = adj[t];
  }
  return pm;
}

namespace {

constexpr int kMaxIter = 1000;
constexpr double kEps = 1e-15;

double gamma_p_series(double a, double x) {
  double term = 1.0 / a, sum = term;
  for (int n = 1; n < kMaxIter; ++n) {
    term *= x / (a + n);
    sum += term;
    if (std::abs(term) < std::abs(sum) * kEps) break;
  }
  return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Modified Lentz evaluation of the continued fraction for Q.
double gamma_q_fraction(double a, double x) {
  constexpr double tiny = 1e-300;
  double b = x + 1.0 - a, c = 1.0 / tiny, d = 1.0 / b, h = d;
  for (int i = 1; i < kMaxIter; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) < kEps) break;
  }
  return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

}  // namespace

double gamma_p(double a, double x) {
  if (!(a > 0.0) || x < 0.0) throw InvalidArgumentError("stats", "incomplete gamma needs a > 0 and x >= 0");
  if (x == 0.0) return 0.0;
  return x < a + 1.0 ? gamma_p_series(a, x) : 1.0 - gamma_q_fraction(a, x);
}

double gamma_q(double a, double x) {
  if (!(a > 0.0) || x < 0.0) throw InvalidArgumentError("stats", "incomplete gamma needs a > 0 and x >= 0");
  if (x == 0.0) return 1.0;
  return x < a + 1.0 ? 1.0 - gamma_p_series(a, x) : gamma_q_fraction(a, x);
}

double chi2_sf(double x, double df) { return x <= 0.0 ? 1.0 : gamma_q(0.5 * df, 0.5 * x); }

double normal_sf(double z) { return 0.5 * std::erfc(z / std::sqrt(2.0)); }

}  // namespace epf::stats
