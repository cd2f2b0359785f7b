#include "epf/nnkit/serialize.hpp"

#include "epf/core/error.hpp"

namespace epf::nn {

using nlohmann::json;

json to_json(const Network& net) {
  json j;
  j["format"] = "epf-network";
  j["version"] = kNetworkFormatVersion;
  j["n_continuous"] = net.n_continuous();
  j["n_out"] = net.n_out();
  j["hidden"] = net.hidden();
  j["activation"] = to_string(net.activation());
  j["embeddings"] = json::array();
  for (const auto& e : net.embeddings())
    j["embeddings"].push_back({{"name", e.name}, {"vocab", e.vocab}, {"dim", e.dim}, {"theta", e.theta.value}});
  j["layers"] = json::array();
  for (const auto& l : net.layers())
    j["layers"].push_back({{"in", l.W.shape[0]}, {"out", l.W.shape[1]}, {"W", l.W.value}, {"b", l.b.value}});
  return j;
}

Network network_from_json(const json& j) {
  try {
    if (j.at("format") != "epf-network") throw ParseError("nnkit", "not a network document");
    if (j.at("version").get<int>() != kNetworkFormatVersion)
      throw ParseError("nnkit", "unsupported network format version " + j.at("version").dump());
    std::vector<EmbeddingShape> shapes;
    for (const auto& e : j.at("embeddings"))
      shapes.push_back({e.at("name").get<std::string>(), e.at("vocab").get<int>(), e.at("dim").get<int>()});
    Network net(j.at("n_continuous").get<int>(), shapes, j.at("hidden").get<std::vector<int>>(),
                parse_activation(j.at("activation").get<std::string>()), j.at("n_out").get<int>());
    auto load = [](Tensor& t, const json& v) {
      auto vals = v.get<std::vector<double>>();
      if (vals.size() != t.size()) throw ParseError("nnkit", "parameter block has the wrong length");
      t.value = std::move(vals);
    };
    for (std::size_t k = 0; k < shapes.size(); ++k) load(net.embeddings()[k].theta, j.at("embeddings")[k].at("theta"));
    if (j.at("layers").size() != net.layers().size()) throw ParseError("nnkit", "layer count mismatch");
    for (std::size_t k = 0; k < net.layers().size(); ++k) {
      load(net.layers()[k].W, j.at("layers")[k].at("W"));
      load(net.layers()[k].b, j.at("layers")[k].at("b"));
    }
    return net;
  } catch (const json::exception& e) {
    throw ParseError("nnkit", std::string("malformed network document: ") + e.what());
  }
}

json to_json(const NetworkConfig& c) {
  json j;
  j["neurons"] = c.neurons;
  j["hidden_activation"] = to_string(c.hidden_activation);
  j["output_activation"] = to_string(c.output_activation);
  j["epochs"] = c.epochs ? json(*c.epochs) : json("auto");
  j["optimizer"] = to_string(c.optimizer);
  j["learning_rate"] = c.learning_rate;
  j["batch_size"] = c.batch_size;
  j["seed"] = c.seed;
  j["early_stop_patience"] = c.early_stop_patience;
  j["max_epochs"] = c.max_epochs;
  j["validation_fraction"] = c.validation_fraction;
  j["rho"] = c.rho;
  j["beta1"] = c.beta1;
  j["beta2"] = c.beta2;
  j["epsilon"] = c.epsilon;
  return j;
}

NetworkConfig config_from_json(const json& j) {
  try {
    NetworkConfig c;
    c.neurons = j.at("neurons").get<std::vector<int>>();
    c.hidden_activation = parse_activation(j.at("hidden_activation").get<std::string>());
    c.output_activation = parse_activation(j.at("output_activation").get<std::string>());
    if (j.at("epochs").is_string()) c.epochs.reset();
    else c.epochs = j.at("epochs").get<int>();
    c.optimizer = parse_optimizer(j.at("optimizer").get<std::string>());
    c.learning_rate = j.at("learning_rate");
    c.batch_size = j.at("batch_size");
    c.seed = j.at("seed");
    c.early_stop_patience = j.at("early_stop_patience");
    c.max_epochs = j.at("max_epochs");
    c.validation_fraction = j.at("validation_fraction");
    c.rho = j.at("rho");
    c.beta1 = j.at("beta1");
    c.beta2 = j.at("beta2");
    c.epsilon = j.at("epsilon");
    return c;
  } catch (const json::exception& e) {
    throw ParseError("nnkit", std::string("malformed network config: ") + e.what());
  }
}

}  // namespace epf::nn
