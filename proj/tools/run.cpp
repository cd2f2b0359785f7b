#include <CLI11.hpp>

#include <algorithm>
#include <functional>
#include <iostream>

#include "commands.hpp"
#include "epf/core/error.hpp"
#include "epf/version.hpp"

namespace epf::cli {

namespace {

std::string key_of(const std::string& flag) {
  std::string k = flag.substr(2);
  std::replace(k.begin(), k.end(), '-', '_');
  return k;
}

}  // namespace

int run(int argc, char** argv) {
  CLI::App app{"Day-ahead electricity price forecasting: backtests, long-term profiles, forward curves", "epf"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);
  app.fallthrough();

  std::optional<std::uint64_t> seed;
  std::string config_path;
  std::optional<std::string> out_dir;
  std::optional<int> jobs;
  app.add_option("--seed", seed, "Base seed (required by commands that train networks or sample data)");
  app.add_option("--config", config_path, "Flat key = value file; command-line flags take precedence")
      ->check(CLI::ExistingFile);
  app.add_option("--out", out_dir, "Output directory (default: out)");
  app.add_option("--jobs", jobs, "Concurrent per-day fits; 0 uses every core")->check(CLI::NonNegativeNumber);

  KeyValues flags;
  std::vector<std::string> inputs;
  auto opt = [&](CLI::App* sub, const std::string& flag, const std::string& desc) {
    sub->add_option_function<std::string>(flag, [&flags, key = key_of(flag)](const std::string& v) { flags[key] = v; },
                                          desc);
  };
  auto data_opts = [&](CLI::App* sub) {
    opt(sub, "--prices", "Hourly price CSV (timestamp,price_eur_mwh)");
    opt(sub, "--renewables", "Hourly renewables CSV (timestamp,wind_mw,solar_mw)");
    opt(sub, "--holidays", "Holiday table CSV (date,kind) replacing the built-in German one");
  };

  std::map<std::string, std::function<int(const RunConfig&)>> commands;

  auto* bt = app.add_subcommand("backtest", "Rolling day-ahead backtest, one ledger per model");
  data_opts(bt);
  opt(bt, "--models", "Comma-separated model ids, e.g. naive,dnn-emb-c2+renew");
  opt(bt, "--from", "First forecast day (YYYY-MM-DD)");
  opt(bt, "--to", "Last forecast day (YYYY-MM-DD)");
  opt(bt, "--window-years", "Trailing training window in years (default 5)");
  opt(bt, "--epochs", "Override the network preset's epoch count");
  bt->add_flag_function("--save-models", [&flags](std::int64_t) { flags["save_models"] = "true"; },
                        "Save each network fitted for the last day as JSON");
  commands["backtest"] = cmd_backtest;

  auto* ltf = app.add_subcommand("ltf", "Long-term profile evaluation by hDev/dDev");
  data_opts(ltf);
  opt(ltf, "--models", "Comma-separated model ids (default ltf-dummy,ltf-sin)");
  opt(ltf, "--years", "Evaluation years, e.g. 2015-2019 or 2016,2018");
  opt(ltf, "--epochs", "Override the network preset's epoch count");
  commands["ltf"] = cmd_ltf;

  auto* hp = app.add_subcommand("hpfc", "Hourly forward curve from a profile and futures quotes");
  data_opts(hp);
  opt(hp, "--model", "Profile model id (default ltf-sin)");
  opt(hp, "--quotes", "Quotes CSV (delivery_start,delivery_end,load_shape,price_eur_mwh)");
  opt(hp, "--from", "Horizon start (default: earliest delivery start)");
  opt(hp, "--to", "Horizon end (default: latest delivery end)");
  opt(hp, "--window-years", "Training window for short-term models");
  opt(hp, "--epochs", "Override the network preset's epoch count");
  commands["hpfc"] = cmd_hpfc;

  auto* st = app.add_subcommand("stats", "Aligned-rank test and Holm comparisons over ledgers");
  st->add_option("ledgers", inputs, "Ledger CSV files written by backtest")->required()->check(CLI::ExistingFile);
  opt(st, "--control", "Control method (default: best average rank)");
  commands["stats"] = cmd_stats;

  auto* em = app.add_subcommand("embeddings", "Export embedding tables of a saved network");
  opt(em, "--model", "Model JSON written by backtest --save-models");
  opt(em, "--neighbors", "Nearest neighbours listed per label (default 3)");
  commands["embeddings"] = cmd_embeddings;

  auto* sy = app.add_subcommand("synth", "Generate a synthetic market dataset");
  opt(sy, "--from", "First day (YYYY-MM-DD)");
  opt(sy, "--to", "Last day (YYYY-MM-DD)");
  commands["synth"] = cmd_synth;

  auto* gc = app.add_subcommand("gradcheck", "Finite-difference gradient check on random networks");
  opt(gc, "--count", "Number of networks (default 50)");
  commands["gradcheck"] = cmd_gradcheck;

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  RunConfig rc;
  rc.command = app.get_subcommands().front()->get_name();
  rc.inputs = inputs;
  try {
    if (!config_path.empty()) rc.kv = parse_key_values_file(config_path);
    for (const auto& [k, v] : flags) rc.kv[k] = v;
    // Run-location settings stay out of the config hash.
    if (auto it = rc.kv.find("seed"); it != rc.kv.end()) {
      if (!seed) {
        try {
          seed = std::stoull(it->second);
        } catch (const std::exception&) {
          throw UsageError("bad seed '" + it->second + "' in config");
        }
      }
      rc.kv.erase(it);
    }
    if (auto it = rc.kv.find("out"); it != rc.kv.end()) {
      if (!out_dir) out_dir = it->second;
      rc.kv.erase(it);
    }
    if (auto it = rc.kv.find("jobs"); it != rc.kv.end()) {
      if (!jobs) jobs = static_cast<int>(kv_int(rc.kv, "jobs", 0));
      rc.kv.erase(it);
    }
    rc.seed = seed;
    rc.out_dir = out_dir.value_or("out");
    rc.jobs = jobs.value_or(0);
    return commands.at(rc.command)(rc);
  } catch (const UsageError& e) {
    std::cerr << "epf: usage: " << e.what() << "\nRun 'epf " << rc.command << " --help' for options.\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "epf: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "epf: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace epf::cli
