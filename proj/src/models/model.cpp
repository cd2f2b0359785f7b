#include "epf/models/model.hpp"

#include <cmath>

#include "epf/core/error.hpp"
#include "epf/models/dnn.hpp"
#include "epf/models/lear.hpp"
#include "epf/models/ltf.hpp"
#include "epf/models/naive.hpp"

namespace epf::models {

std::optional<DayExogenous> exogenous_for(const data::Dataset& ds, Date d) {
  if (!ds.has_renewables()) return std::nullopt;
  DayExogenous e;
  const auto w = ds.wind->day(d), s = ds.solar->day(d);
  auto fill = [&](const std::array<double, 24>& src, std::array<double, 24>& dst) {
    double prev = std::nan("");
    for (int h = 0; h < 24; ++h) {
      if (!std::isnan(src[h])) prev = src[h];
      dst[h] = prev;
    }
    // Leading gaps take the first available hour.
    double next = std::nan("");
    for (int h = 23; h >= 0; --h) {
      if (!std::isnan(src[h])) next = src[h];
      if (std::isnan(dst[h])) dst[h] = next;
    }
  };
  fill(w, e.wind);
  fill(s, e.solar);
  for (int h = 0; h < 24; ++h)
    if (std::isnan(e.wind[h]) || std::isnan(e.solar[h]))
      throw FeatureError("models", "no renewable forecasts for " + d.to_string());
  return e;
}

Date window_start(Date as_of, int years) { return as_of.minus_years(years) + 1; }

double ForecastModel::predict_hour(const HourlyStamp& t) const {
  throw FeatureError("models", id() + " cannot produce calendar-only hourly values for " + t.to_string());
}

std::string to_string(Encoder e) {
  switch (e) {
    case Encoder::Embedding: return "emb";
    case Encoder::Ordinal: return "ord";
    case Encoder::Circle: return "sincos";
  }
  return "?";
}

std::string ModelSpec::id() const {
  std::string s;
  switch (kind) {
    case ModelKind::Naive: return "naive";
    case ModelKind::LtfDummy: return "ltf-dummy";
    case ModelKind::LtfSinusoidal: return "ltf-sin";
    case ModelKind::Lear: s = "lear"; break;
    case ModelKind::Dnn: s = "dnn-" + to_string(encoder) + "-c" + std::to_string(config); break;
  }
  if (renewables) s += "+renew";
  if (cross) s += "+cross";
  if (year) s += "+year";
  return s;
}

ModelSpec parse_model_id(const std::string& id) {
  ModelSpec spec;
  std::string base = id;
  std::vector<std::string> suffixes;
  if (const auto plus = id.find('+'); plus != std::string::npos) {
    base = id.substr(0, plus);
    std::size_t pos = plus;
    while (pos != std::string::npos) {
      const auto next = id.find('+', pos + 1);
      suffixes.push_back(id.substr(pos + 1, next == std::string::npos ? std::string::npos : next - pos - 1));
      pos = next;
    }
  }
  auto bad = [&](const std::string& why) { return ParseError("models", "model id '" + id + "': " + why); };
  if (base == "naive") spec.kind = ModelKind::Naive;
  else if (base == "lear") spec.kind = ModelKind::Lear;
  else if (base == "ltf-dummy") spec.kind = ModelKind::LtfDummy;
  else if (base == "ltf-sin") spec.kind = ModelKind::LtfSinusoidal;
  else if (base.rfind("dnn-", 0) == 0) {
    spec.kind = ModelKind::Dnn;
    const auto dash = base.find("-c", 4);
    if (dash == std::string::npos) throw bad("missing configuration");
    const auto enc = base.substr(4, dash - 4);
    int max_config = 3;
    if (enc == "emb") {
      spec.encoder = Encoder::Embedding;
      max_config = 5;
    } else if (enc == "ord") {
      spec.encoder = Encoder::Ordinal;
    } else if (enc == "sincos") {
      spec.encoder = Encoder::Circle;
    } else {
      throw bad("unknown encoder '" + enc + "'");
    }
    const auto num = base.substr(dash + 2);
    if (num.size() != 1 || num[0] < '1' || num[0] - '0' > max_config) throw bad("unknown configuration");
    spec.config = num[0] - '0';
  } else {
    throw bad("unknown model");
  }
  for (const auto& s : suffixes) {
    if (s == "renew" && (spec.kind == ModelKind::Dnn || spec.kind == ModelKind::Lear)) spec.renewables = true;
    else if (s == "cross" && spec.kind == ModelKind::Dnn && spec.encoder == Encoder::Embedding) spec.cross = true;
    else if (s == "year" && spec.kind == ModelKind::Dnn) spec.year = true;
    else throw bad("suffix '+" + s + "' does not apply");
  }
  return spec;
}

std::unique_ptr<ForecastModel> make_model(const ModelSpec& spec, const ModelOptions& opts) {
  switch (spec.kind) {
    case ModelKind::Naive: return std::make_unique<NaiveModel>(opts);
    case ModelKind::Lear: return std::make_unique<LearModel>(spec.renewables, opts);
    case ModelKind::LtfDummy: return std::make_unique<LtfDummyModel>(opts);
    case ModelKind::LtfSinusoidal: return std::make_unique<LtfSinusoidalModel>(opts);
    case ModelKind::Dnn: {
      FeatureSpec fs{spec.encoder, spec.renewables, spec.year, spec.cross};
      return std::make_unique<DnnModel>(spec.id(), fs, nn::preset_config(spec.config), opts);
    }
  }
  throw InvalidArgumentError("models", "unknown model kind");
}

}  // namespace epf::models
