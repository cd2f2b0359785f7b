#pragma once

#include <json.hpp>

#include "epf/nnkit/network.hpp"

namespace epf::nn {

inline constexpr int kNetworkFormatVersion = 1;

nlohmann::json to_json(const Network& net);
Network network_from_json(const nlohmann::json& j);

nlohmann::json to_json(const NetworkConfig& cfg);
NetworkConfig config_from_json(const nlohmann::json& j);

}  // namespace epf::nn
