#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "epf/core/error.hpp"
#include "epf/core/random.hpp"
#include "epf/data/synth.hpp"
#include "epf/insight/insight.hpp"
#include "epf/models/dnn.hpp"

using namespace epf;
using namespace epf::insight;

TEST(Cosine, Examples) {
  const std::vector<double> u{1, 2, 3}, w{-1, -2, -3}, a{1, 0}, b{0, 4};
  EXPECT_NEAR(cosine_distance(u, u), 0.0, 1e-15);
  EXPECT_NEAR(cosine_distance(a, b), 1.0, 1e-15);
  EXPECT_NEAR(cosine_distance(u, w), 2.0, 1e-15);
  EXPECT_THROW(cosine_distance(std::vector<double>{0, 0}, a), UndefinedValueError);
  EXPECT_THROW(cosine_distance(u, a), ShapeError);
}

TEST(Cosine, PositiveScaleInvariance) {
  Rng rng(1);
  for (int rep = 0; rep < 100; ++rep) {
    std::vector<double> u(6), v(6), us(6);
    const double s = rng.uniform(0.01, 100.0);
    for (int i = 0; i < 6; ++i) {
      u[i] = rng.normal();
      v[i] = rng.normal();
      us[i] = s * u[i];
    }
    const double d = cosine_distance(u, v);
    EXPECT_NEAR(cosine_distance(us, v), d, 1e-12);
    EXPECT_GE(d, 0.0);
    EXPECT_LE(d, 2.0);
  }
}

TEST(Neighbors, RankingAndTies) {
  LabeledVectors lv{{"a", "b", "c", "d", "twin"}, {{1, 0}, {0, 1}, {1, 1}, {-1, 0.1}, {1, 0}}};
  const auto nn = nearest_neighbors(lv, "a", 4);
  ASSERT_EQ(nn.size(), 4u);
  EXPECT_EQ(nn[0].first, "twin");
  EXPECT_NEAR(nn[0].second, 0.0, 1e-15);
  EXPECT_EQ(nn[1].first, "c");
  EXPECT_EQ(nn[3].first, "d");
  // Equal distances fall back to label order.
  LabeledVectors tie{{"q", "zz", "aa"}, {{1, 0}, {0, 1}, {0, -1}}};
  const auto t = nearest_neighbors(tie, "q", 2);
  EXPECT_EQ(t[0].first, "aa");
  EXPECT_EQ(t[1].first, "zz");
  EXPECT_THROW(nearest_neighbors(lv, "zz", 1), LookupError);
  EXPECT_THROW(nearest_neighbors(lv, "a", 5), InvalidArgumentError);
  LabeledVectors dup{{"a", "a"}, {{1}, {2}}};
  EXPECT_THROW(dup.validate(), InvalidArgumentError);
}

TEST(Neighbors, RelabelingPermutation) {
  Rng rng(4);
  LabeledVectors lv;
  for (int i = 0; i < 8; ++i) {
    lv.labels.push_back("l" + std::to_string(i));
    lv.vectors.push_back({rng.normal(), rng.normal(), rng.normal()});
  }
  auto perm = lv;
  std::reverse(perm.labels.begin(), perm.labels.end());
  std::reverse(perm.vectors.begin(), perm.vectors.end());
  EXPECT_EQ(nearest_neighbors(lv, "l3", 7), nearest_neighbors(perm, "l3", 7));
}

TEST(Jacobi, EigenPairsOfRandomSymmetric) {
  Rng rng(5);
  const std::size_t n = 6;
  std::vector<std::vector<double>> a(n, std::vector<double>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j <= i; ++j) a[i][j] = a[j][i] = rng.normal();
  std::vector<double> val;
  std::vector<std::vector<double>> vec;
  jacobi_eigen(a, val, vec);
  for (std::size_t c = 0; c < n; ++c) {
    if (c) {
      EXPECT_GE(val[c - 1], val[c]);
    }
    for (std::size_t i = 0; i < n; ++i) {
      double av = 0;
      for (std::size_t k = 0; k < n; ++k) av += a[i][k] * vec[k][c];
      EXPECT_NEAR(av, val[c] * vec[i][c], 1e-10);
    }
    for (std::size_t c2 = 0; c2 < n; ++c2) {
      double dot = 0;
      for (std::size_t i = 0; i < n; ++i) dot += vec[i][c] * vec[i][c2];
      EXPECT_NEAR(dot, c == c2 ? 1.0 : 0.0, 1e-10);
    }
  }
}

TEST(Pca, CollinearAndCross) {
  LabeledVectors line{{"a", "b", "c", "d"}, {{0, 0, 0}, {1, 2, 3}, {2, 4, 6}, {-1, -2, -3}}};
  const auto pl = pca2(line);
  EXPECT_TRUE(pl.rank_deficient);
  for (const auto& xy : pl.coords) EXPECT_EQ(xy[1], 0.0);
  LabeledVectors cross{{"n", "s", "e", "w"}, {{0, 1}, {0, -1}, {1, 0}, {-1, 0}}};
  const auto pc = pca2(cross);
  EXPECT_FALSE(pc.rank_deficient);
  EXPECT_NEAR(pc.variance[0], pc.variance[1], 1e-12);
  EXPECT_THROW(pca2(LabeledVectors{{"a", "b"}, {{1, 2}, {3, 4}}}), InvalidArgumentError);
}

TEST(Pca, ReconstructionErrorEqualsEigenTail) {
  Rng rng(6);
  LabeledVectors lv;
  for (int i = 0; i < 10; ++i) {
    lv.labels.push_back(std::to_string(i));
    std::vector<double> v(6);
    for (double& x : v) x = rng.normal() * (1 + i % 3);
    lv.vectors.push_back(v);
  }
  const auto p = pca2(lv);
  // Residual variance after removing the 2-D projection = sum of the other eigenvalues.
  std::vector<double> mean(6, 0.0);
  for (const auto& v : lv.vectors)
    for (int j = 0; j < 6; ++j) mean[j] += v[j] / 10;
  double total = 0, kept = 0;
  for (std::size_t i = 0; i < 10; ++i) {
    for (int j = 0; j < 6; ++j) total += (lv.vectors[i][j] - mean[j]) * (lv.vectors[i][j] - mean[j]) / 10;
    kept += (p.coords[i][0] * p.coords[i][0] + p.coords[i][1] * p.coords[i][1]) / 10;
  }
  double tail = 0;
  for (std::size_t k = 2; k < p.eigenvalues.size(); ++k) tail += p.eigenvalues[k];
  EXPECT_NEAR(total - kept, tail, 1e-10);
  EXPECT_LE(total - kept, tail + 1e-10);
}

TEST(Pca, RotationInvariantUpToSignRule) {
  Rng rng(7);
  LabeledVectors lv;
  for (int i = 0; i < 7; ++i) {
    lv.labels.push_back(std::to_string(i));
    lv.vectors.push_back({rng.normal() * 3, rng.normal(), rng.normal() * 0.2});
  }
  // Rotation about the z axis.
  const double c = std::cos(0.7), s = std::sin(0.7);
  auto rot = lv;
  for (auto& v : rot.vectors) v = {c * v[0] - s * v[1], s * v[0] + c * v[1], v[2]};
  const auto a = pca2(lv), b = pca2(rot);
  for (int ax = 0; ax < 2; ++ax) {
    const double sign = a.coords[0][ax] * b.coords[0][ax] >= 0 ? 1.0 : -1.0;
    for (std::size_t i = 0; i < 7; ++i) EXPECT_NEAR(a.coords[i][ax], sign * b.coords[i][ax], 1e-9);
  }
}

TEST(Export, TablesFromModel) {
  const auto ds = data::synth_generate(2, Date(2018, 1, 1), Date(2018, 12, 31));
  models::ModelOptions opts;
  opts.epochs = 1;
  auto m = models::make_model(models::parse_model_id("dnn-emb-c2"), opts);
  m->fit(ds, Date(2018, 12, 31));
  const auto& dm = dynamic_cast<const models::DnnModel&>(*m);
  EXPECT_EQ(embedding_table_names(dm), (std::vector<std::string>{"hour", "weekday10", "month"}));
  const auto wd = embedding_table(dm, 1);
  EXPECT_EQ(wd.size(), 10u);
  std::ostringstream vec, meta;
  write_vectors_tsv(vec, wd);
  write_metadata_tsv(meta, wd);
  const std::string vs = vec.str();
  EXPECT_EQ(std::count(vs.begin(), vs.end(), '\n'), 10);
  EXPECT_EQ(meta.str().substr(0, 14), "label\nMonday\nT");
  EXPECT_EQ(nearest_neighbors(wd, "Sunday", 9).size(), 9u);

  auto ord = models::make_model(models::parse_model_id("dnn-ord-c2"), opts);
  ord->fit(ds, Date(2018, 12, 31));
  EXPECT_THROW(embedding_table(dynamic_cast<const models::DnnModel&>(*ord), 0), FeatureError);
}
