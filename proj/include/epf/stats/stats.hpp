#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace epf::stats {

// n samples (rows) by k methods (columns); lower is better.
struct ScoreMatrix {
  std::vector<std::string> methods;
  std::vector<std::vector<double>> rows;

  std::size_t k() const { return methods.size(); }
  std::size_t n() const { return rows.size(); }
  // Throws InvalidArgumentError unless k >= 2, n >= 2 and every cell is finite.
  void validate() const;
};

struct FriedmanResult {
  std::vector<double> avg_rank;  // per method, in column order
  double statistic = 0.0;        // chi-square with k - 1 degrees of freedom
  double p_value = 1.0;
  // Null standard error of a difference of two average ranks, from the
  // within-row permutation variance of the observed ranks.
  double pair_se = 0.0;
};

// Aligned ranks: subtract each row's mean, rank all n*k values jointly with
// average ranks for ties.
FriedmanResult friedman_aligned(const ScoreMatrix& m);

// Holm step-down adjustment; output in input order.
std::vector<double> holm_adjust(std::span<const double> raw);

// z statistic of two average aligned ranks.
double pairwise_z(double rank_i, double rank_j, double pair_se);

struct RankingReport {
  std::vector<std::string> methods;  // ordered best to worst
  std::vector<double> avg_rank;
  double statistic = 0.0;
  double p_value = 1.0;
  std::string control;
  std::vector<double> raw_p;       // vs control; NaN for the control itself
  std::vector<double> adjusted_p;  // Holm over the k - 1 comparisons
};

// Control defaults to the method with the lowest average rank.
RankingReport holm_vs_control(const ScoreMatrix& m, const std::optional<std::string>& control = std::nullopt);

struct PairwiseMatrix {
  std::vector<std::string> order;  // best to worst
  std::vector<std::vector<double>> p;  // Holm-adjusted over all pairs, diagonal 1
};

PairwiseMatrix pairwise_matrix(const ScoreMatrix& m);

// Regularized lower / upper incomplete gamma functions.
double gamma_p(double a, double x);
double gamma_q(double a, double x);
double chi2_sf(double x, double df);
double normal_sf(double z);

}  // namespace epf::stats
