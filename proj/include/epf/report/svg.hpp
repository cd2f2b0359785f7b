#pragma once

#include <array>
#include <string>
#include <vector>

#include "epf/backtest/backtest.hpp"
#include "epf/insight/insight.hpp"
#include "epf/stats/stats.hpp"

namespace epf::report {

struct Line {
  std::string name;
  std::vector<double> values;
};

// Standalone SVG documents.
std::string svg_lines(const std::string& title, const std::vector<Line>& lines, const std::string& x_label = "");
std::string svg_boxplot(const std::string& title, const std::vector<backtest::GroupStats>& groups);
// Stem plot of lags 1..n with the +-2/sqrt(n_obs) band when n_obs > 0.
std::string svg_stems(const std::string& title, const std::vector<double>& values, std::size_t n_obs = 0);
// Darker cells for smaller p-values; rows and columns in the matrix order.
std::string svg_heatmap(const std::string& title, const stats::PairwiseMatrix& m);
std::string svg_scatter(const std::string& title, const std::vector<std::string>& labels,
                        const std::vector<std::array<double, 2>>& points);

void write_text_file(const std::string& path, const std::string& text);

}  // namespace epf::report
