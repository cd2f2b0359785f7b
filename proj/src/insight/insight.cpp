#include "epf/insight/insight.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <set>

#include "epf/core/error.hpp"
#include "epf/data/csv.hpp"
#include "epf/models/dnn.hpp"

namespace epf::insight {

void LabeledVectors::validate() const {
  if (labels.size() != vectors.size())
    throw ShapeError("insight", std::to_string(labels.size()) + " labels for " + std::to_string(vectors.size()) +
                                    " vectors");
  for (const auto& v : vectors)
    if (v.size() != dim()) throw ShapeError("insight", "vectors of different dimensions");
  std::set<std::string> seen;
  for (const auto& l : labels)
    if (!seen.insert(l).second) throw InvalidArgumentError("insight", "duplicate label '" + l + "'");
}

std::size_t LabeledVectors::index_of(const std::string& label) const {
  const auto it = std::find(labels.begin(), labels.end(), label);
  if (it == labels.end()) throw LookupError("insight", "unknown label '" + label + "'");
  return static_cast<std::size_t>(it - labels.begin());
}

std::vector<std::string> embedding_table_names(const models::DnnModel& m) {
  std::vector<std::string> names;
  for (const auto& t : m.network().embeddings()) names.push_back(t.name);
  return names;
}

LabeledVectors embedding_table(const models::DnnModel& m, std::size_t k) {
  const auto& tables = m.network().embeddings();
  if (tables.empty()) throw FeatureError("insight", m.id() + " has no embeddings (encoder " + to_string(m.features().encoder) + ")");
  if (k >= tables.size()) throw LookupError("insight", "no embedding table " + std::to_string(k));
  LabeledVectors lv;
  lv.labels = m.embedding_labels(k);
  const auto& t = tables[k];
  for (int i = 0; i < t.vocab; ++i) {
    const auto r = t.row(i);
    lv.vectors.emplace_back(r.begin(), r.end());
  }
  return lv;
}

double cosine_distance(std::span<const double> u, std::span<const double> v) {
  if (u.size() != v.size()) throw ShapeError("insight", "cosine distance of vectors of different dimensions");
  double uv = 0.0, uu = 0.0, vv = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    uv += u[i] * v[i];
    uu += u[i] * u[i];
    vv += v[i] * v[i];
  }
  if (uu == 0.0 || vv == 0.0) throw UndefinedValueError("insight", "cosine distance with a zero vector");
  return std::clamp(1.0 - uv / std::sqrt(uu * vv), 0.0, 2.0);
}

std::vector<std::pair<std::string, double>> nearest_neighbors(const LabeledVectors& lv, const std::string& query,
                                                              std::size_t k) {
  lv.validate();
  const std::size_t q = lv.index_of(query);
  if (k >= lv.size()) throw InvalidArgumentError("insight", "k must be below the number of labels");
  std::vector<std::pair<std::string, double>> out;
  for (std::size_t i = 0; i < lv.size(); ++i)
    if (i != q) out.emplace_back(lv.labels[i], cosine_distance(lv.vectors[q], lv.vectors[i]));
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return a.second != b.second ? a.second < b.second : a.first < b.first;
  });
  out.resize(k);
  return out;
}

void jacobi_eigen(std::vector<std::vector<double>> a, std::vector<double>& values,
                  std::vector<std::vector<double>>& vectors) {
  const std::size_t n = a.size();
  vectors.assign(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) vectors[i][i] = 1.0;
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0, diag = 0.0;
    for (std::size_t p = 0; p < n; ++p) {
      diag += a[p][p] * a[p][p];
      for (std::size_t q = p + 1; q < n; ++q) off += a[p][q] * a[p][q];
    }
    if (off <= 1e-30 * std::max(diag, 1e-300)) break;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) {
        if (a[p][q] == 0.0) continue;
        const double theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0), s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a[k][p], akq = a[k][q];
          a[k][p] = c * akp - s * akq;
          a[k][q] = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a[p][k], aqk = a[q][k];
          a[p][k] = c * apk - s * aqk;
          a[q][k] = s * apk + c * aqk;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double vkp = vectors[k][p], vkq = vectors[k][q];
          vectors[k][p] = c * vkp - s * vkq;
          vectors[k][q] = s * vkp + c * vkq;
        }
      }
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return a[x][x] > a[y][y]; });
  values.resize(n);
  auto vec = vectors;
  for (std::size_t j = 0; j < n; ++j) {
    values[j] = a[order[j]][order[j]];
    for (std::size_t i = 0; i < n; ++i) vectors[i][j] = vec[i][order[j]];
  }
}

Projection pca2(const LabeledVectors& lv) {
  lv.validate();
  const std::size_t n = lv.size(), d = lv.dim();
  if (n < 3 || d < 2) throw InvalidArgumentError("insight", "pca2 needs at least 3 vectors of dimension 2");
  std::vector<double> mean(d, 0.0);
  for (const auto& v : lv.vectors)
    for (std::size_t j = 0; j < d; ++j) mean[j] += v[j] / static_cast<double>(n);
  std::vector<std::vector<double>> cov(d, std::vector<double>(d, 0.0));
  for (const auto& v : lv.vectors)
    for (std::size_t a = 0; a < d; ++a)
      for (std::size_t b = 0; b < d; ++b) cov[a][b] += (v[a] - mean[a]) * (v[b] - mean[b]) / static_cast<double>(n);
  Projection pr;
  std::vector<std::vector<double>> vecs;
  jacobi_eigen(cov, pr.eigenvalues, vecs);
  std::array<std::vector<double>, 2> axis;
  for (int c = 0; c < 2; ++c) {
    axis[c].resize(d);
    std::size_t big = 0;
    for (std::size_t i = 0; i < d; ++i) {
      axis[c][i] = vecs[i][c];
      if (std::abs(axis[c][i]) > std::abs(axis[c][big])) big = i;
    }
    if (axis[c][big] < 0)
      for (double& x : axis[c]) x = -x;
  }
  const double tol = 1e-12 * std::max(pr.eigenvalues[0], 1e-300);
  pr.rank_deficient = pr.eigenvalues[1] <= tol;
  pr.variance = {std::max(pr.eigenvalues[0], 0.0), pr.rank_deficient ? 0.0 : pr.eigenvalues[1]};
  for (const auto& v : lv.vectors) {
    std::array<double, 2> xy{};
    for (int c = 0; c < 2; ++c) {
      if (c == 1 && pr.rank_deficient) break;
      for (std::size_t j = 0; j < d; ++j) xy[c] += (v[j] - mean[j]) * axis[c][j];
    }
    pr.coords.push_back(xy);
  }
  return pr;
}

void write_vectors_tsv(std::ostream& out, const LabeledVectors& lv) {
  lv.validate();
  for (const auto& v : lv.vectors) {
    for (std::size_t j = 0; j < v.size(); ++j) out << (j ? "\t" : "") << data::format_double(v[j]);
    out << '\n';
  }
}

void write_metadata_tsv(std::ostream& out, const LabeledVectors& lv, const std::string& header) {
  lv.validate();
  out << header << '\n';
  for (const auto& l : lv.labels) out << l << '\n';
}

}  // namespace epf::insight
