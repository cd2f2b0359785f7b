#pragma once

#include <iosfwd>
#include <map>
#include <string>

namespace epf {

// Flat `key = value` (or `key: value`) text; '#' starts a comment line.
using KeyValues = std::map<std::string, std::string>;

KeyValues parse_key_values(std::istream& in);
KeyValues parse_key_values_file(const std::string& path);

double kv_double(const KeyValues& kv, const std::string& key, double fallback);
long long kv_int(const KeyValues& kv, const std::string& key, long long fallback);
bool kv_bool(const KeyValues& kv, const std::string& key, bool fallback);

// FNV-1a over the canonical `key=value\n` rendering, as 16 hex digits.
std::string config_hash(const KeyValues& kv);

}  // namespace epf
