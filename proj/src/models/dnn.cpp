#include "epf/models/dnn.hpp"

#include <algorithm>
#include <numeric>

#include "epf/core/error.hpp"
#include "epf/nnkit/serialize.hpp"

namespace epf::models {

using nlohmann::json;

DnnModel::DnnModel(std::string id, FeatureSpec features, nn::NetworkConfig config, ModelOptions opts)
    : id_(std::move(id)), features_(features), config_(std::move(config)), opts_(opts) {
  config_.seed = opts_.seed;
  if (opts_.epochs) config_.epochs = *opts_.epochs;
  config_.validate();
}

void DnnModel::fit(const data::Dataset& history, Date as_of) {
  const Date first = std::max(history.first_date(), window_start(as_of, opts_.window_years));
  const Date last = std::min(as_of, history.last_date());
  if (last < first || last - first + 1 < 365)
    throw InsufficientHistoryError("models", id_ + ": needs at least one year of history before " +
                                                 (as_of + 1).to_string());
  const auto window = history.slice(first, last);
  auto set = build_samples(window, features_, opts_.cal());
  ctx_ = set.context;
  n_samples_ = set.samples.size();

  std::vector<nn::EmbeddingShape> shapes;
  for (auto v : features_.embedding_variables())
    shapes.push_back({calendar::to_string(v), calendar::vocab_size(v, ctx_.n_years), calendar::default_embedding_dim(v)});
  net_ = nn::Network(features_.n_continuous(), shapes, config_.neurons, config_.hidden_activation);
  net_.initialize(config_.seed);
  // Start the output at the mean price so early epochs are not spent on the level.
  const auto& y = set.samples.y;
  net_.layers().back().b.value[0] = std::accumulate(y.begin(), y.end(), 0.0) / static_cast<double>(y.size());
  result_ = nn::train(net_, set.samples, config_);
  trained_ = true;
}

DayPrices DnnModel::predict_day(Date d, const std::optional<DayExogenous>& exo) const {
  if (!trained_) throw InvalidArgumentError("models", id_ + ": predict before fit");
  if (features_.renewables && !exo)
    throw FeatureError("models", id_ + ": renewable forecasts for " + d.to_string() + " are required");
  auto s = empty_samples(features_);
  const auto day_cf = calendar::calendar_features({d, 0}, opts_.cal());
  for (int h = 0; h < 24; ++h) {
    auto cf = day_cf;
    cf.hour = h;
    cf.idx_month_hour = (cf.month - 1) * 24 + h;
    cf.idx_weekday_hour = cf.weekday10 * 24 + h;
    append_row(features_, ctx_, cf, exo ? exo->wind[h] : 0.0, exo ? exo->solar[h] : 0.0, 0.0, s);
  }
  const auto p = net_.predict(s);
  DayPrices out;
  std::copy(p.begin(), p.end(), out.begin());
  return out;
}

double DnnModel::predict_hour(const HourlyStamp& t) const {
  if (features_.renewables)
    throw FeatureError("models", id_ + ": calendar-only evaluation is not possible with renewable inputs");
  return predict_day(t.date)[t.hour];
}

std::vector<std::string> DnnModel::embedding_labels(std::size_t k) const {
  const auto vars = features_.embedding_variables();
  if (k >= vars.size()) throw LookupError("models", "no embedding table " + std::to_string(k));
  return calendar::category_labels(vars[k], ctx_.first_year, ctx_.n_years);
}

json DnnModel::to_json() const {
  json j;
  j["format"] = "epf-dnn-model";
  j["version"] = kDnnModelFormatVersion;
  j["id"] = id_;
  j["features"] = {{"encoder", to_string(features_.encoder)},
                   {"renewables", features_.renewables},
                   {"year", features_.year},
                   {"cross", features_.cross}};
  json ctx = {{"first_year", ctx_.first_year}, {"n_years", ctx_.n_years}};
  if (ctx_.wind) ctx["wind"] = {ctx_.wind->mean, ctx_.wind->stddev};
  if (ctx_.solar) ctx["solar"] = {ctx_.solar->mean, ctx_.solar->stddev};
  j["context"] = ctx;
  j["config"] = nn::to_json(config_);
  j["window_years"] = opts_.window_years;
  j["n_samples"] = n_samples_;
  j["network"] = nn::to_json(net_);
  return j;
}

DnnModel DnnModel::from_json(const json& j) {
  try {
    if (j.at("format") != "epf-dnn-model") throw ParseError("models", "not a DNN model document");
    if (j.at("version").get<int>() != kDnnModelFormatVersion)
      throw ParseError("models", "unsupported model format version " + j.at("version").dump());
    FeatureSpec fs;
    const auto& f = j.at("features");
    const auto enc = f.at("encoder").get<std::string>();
    if (enc == "emb") fs.encoder = Encoder::Embedding;
    else if (enc == "ord") fs.encoder = Encoder::Ordinal;
    else if (enc == "sincos") fs.encoder = Encoder::Circle;
    else throw ParseError("models", "unknown encoder '" + enc + "'");
    fs.renewables = f.at("renewables");
    fs.year = f.at("year");
    fs.cross = f.at("cross");
    ModelOptions opts;
    opts.window_years = j.at("window_years");
    const auto cfg = nn::config_from_json(j.at("config"));
    opts.seed = cfg.seed;
    DnnModel m(j.at("id").get<std::string>(), fs, cfg, opts);
    const auto& c = j.at("context");
    m.ctx_.first_year = c.at("first_year");
    m.ctx_.n_years = c.at("n_years");
    if (c.contains("wind")) m.ctx_.wind = data::ScalerParams{c["wind"][0], c["wind"][1]};
    if (c.contains("solar")) m.ctx_.solar = data::ScalerParams{c["solar"][0], c["solar"][1]};
    m.n_samples_ = j.at("n_samples");
    m.net_ = nn::network_from_json(j.at("network"));
    m.trained_ = true;
    return m;
  } catch (const json::exception& e) {
    throw ParseError("models", std::string("malformed model document: ") + e.what());
  }
}

std::unique_ptr<DnnModel> fit_dnn(const data::Dataset& history, Date as_of, int config, Encoder encoder,
                                  bool with_renewables, const ModelOptions& opts) {
  ModelSpec spec;
  spec.kind = ModelKind::Dnn;
  spec.encoder = encoder;
  spec.config = config;
  spec.renewables = with_renewables;
  FeatureSpec fs{encoder, with_renewables, false, false};
  auto m = std::make_unique<DnnModel>(spec.id(), fs, nn::preset_config(config), opts);
  m->fit(history, as_of);
  return m;
}

}  // namespace epf::models
