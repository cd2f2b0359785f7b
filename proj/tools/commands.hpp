#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "epf/core/kv.hpp"

namespace epf::cli {

// Bad invocation: wrong flags, missing keys, unordered dates. Exit code 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Settings of one command after merging the config file with the flags
// given on the command line (flags win). Keys use the long flag names with
// '-' replaced by '_'.
struct RunConfig {
  std::string command;
  KeyValues kv;
  std::optional<std::uint64_t> seed;
  std::string out_dir = "out";
  int jobs = 0;
  std::vector<std::string> inputs;  // positional files (stats)

  // Hash of the command name and kv; seed, jobs and out_dir are excluded.
  std::string hash() const;
  // "epf <version> <command> seed=<s> config=<hash>"
  std::string header() const;

  std::optional<std::string> get(const std::string& key) const;
  std::string require(const std::string& key) const;
  std::uint64_t require_seed() const;
};

int cmd_backtest(const RunConfig& rc);
int cmd_ltf(const RunConfig& rc);
int cmd_hpfc(const RunConfig& rc);
int cmd_stats(const RunConfig& rc);
int cmd_embeddings(const RunConfig& rc);
int cmd_synth(const RunConfig& rc);
int cmd_gradcheck(const RunConfig& rc);

// Parses argv and runs the command. Returns the process exit code: 0 on
// success, 1 on a module error, 2 on a usage error.
int run(int argc, char** argv);

}  // namespace epf::cli
