#pragma once

#include <json.hpp>

#include "epf/models/features.hpp"
#include "epf/models/model.hpp"
#include "epf/nnkit/network.hpp"
#include "epf/nnkit/train.hpp"

namespace epf::models {

inline constexpr int kDnnModelFormatVersion = 1;

// Single-output network evaluated once per hour; calendar variables enter
// through embeddings, ordinal numbers or circle projections.
class DnnModel : public ForecastModel {
 public:
  DnnModel(std::string id, FeatureSpec features, nn::NetworkConfig config, ModelOptions opts = {});

  std::string id() const override { return id_; }
  void fit(const data::Dataset& history, Date as_of) override;
  DayPrices predict_day(Date d, const std::optional<DayExogenous>& exo = std::nullopt) const override;
  double predict_hour(const HourlyStamp& t) const override;
  bool uses_renewables() const override { return features_.renewables; }

  bool trained() const { return trained_; }
  const nn::Network& network() const { return net_; }
  const FeatureSpec& features() const { return features_; }
  const FeatureContext& context() const { return ctx_; }
  const nn::NetworkConfig& config() const { return config_; }
  const nn::TrainResult& train_result() const { return result_; }
  std::size_t n_samples() const { return n_samples_; }

  // Row labels of embedding table k.
  std::vector<std::string> embedding_labels(std::size_t k) const;

  nlohmann::json to_json() const;
  static DnnModel from_json(const nlohmann::json& j);

 private:
  std::string id_;
  FeatureSpec features_;
  nn::NetworkConfig config_;
  ModelOptions opts_;
  FeatureContext ctx_;
  nn::Network net_;
  nn::TrainResult result_;
  std::size_t n_samples_ = 0;
  bool trained_ = false;
};

// Trains on the trailing opts.window_years ending at as_of (shorter when the
// history is shorter). Requires at least one year of history.
std::unique_ptr<DnnModel> fit_dnn(const data::Dataset& history, Date as_of, int config, Encoder encoder,
                                  bool with_renewables, const ModelOptions& opts = {});

}  // namespace epf::models
