#pragma once

#include <array>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace epf::models {
class DnnModel;
}

namespace epf::insight {

// Rows of one embedding table with their category labels.
struct LabeledVectors {
  std::vector<std::string> labels;
  std::vector<std::vector<double>> vectors;

  std::size_t size() const { return labels.size(); }
  std::size_t dim() const { return vectors.empty() ? 0 : vectors.front().size(); }
  // Equal dimensions, unique labels, one vector per label.
  void validate() const;
  std::size_t index_of(const std::string& label) const;
};

// Embedding table k of a trained model. Throws FeatureError when the model
// has no embedding tables.
LabeledVectors embedding_table(const models::DnnModel& m, std::size_t k);
std::vector<std::string> embedding_table_names(const models::DnnModel& m);

// 1 - cos(u, v), in [0, 2].
double cosine_distance(std::span<const double> u, std::span<const double> v);

// k nearest labels by cosine distance, ties broken by label.
std::vector<std::pair<std::string, double>> nearest_neighbors(const LabeledVectors& lv, const std::string& query,
                                                              std::size_t k);

struct Projection {
  std::vector<std::array<double, 2>> coords;
  std::array<double, 2> variance{};  // eigenvalues of the two kept axes
  std::vector<double> eigenvalues;   // all, descending
  bool rank_deficient = false;       // second axis zeroed
};

// Eigenvalues (descending) and unit eigenvectors (columns) of a symmetric
// matrix by cyclic Jacobi rotations.
void jacobi_eigen(std::vector<std::vector<double>> a, std::vector<double>& values,
                  std::vector<std::vector<double>>& vectors);

// Projection on the two leading principal axes of the centred rows. Each
// axis is signed so its largest-magnitude component is positive.
Projection pca2(const LabeledVectors& lv);

// vectors.tsv: one tab-separated row per label; metadata.tsv: header + labels.
void write_vectors_tsv(std::ostream& out, const LabeledVectors& lv);
void write_metadata_tsv(std::ostream& out, const LabeledVectors& lv, const std::string& header = "label");

}  // namespace epf::insight
