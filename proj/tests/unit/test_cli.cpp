#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "commands.hpp"
#include "epf/backtest/backtest.hpp"
#include "epf/version.hpp"

namespace fs = std::filesystem;

namespace {

int epf_run(std::vector<std::string> args) {
  args.insert(args.begin(), "epf");
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  testing::internal::CaptureStdout();
  testing::internal::CaptureStderr();
  const int rc = epf::cli::run(static_cast<int>(argv.size()), argv.data());
  testing::internal::GetCapturedStdout();
  testing::internal::GetCapturedStderr();
  return rc;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

// Every regular file below `a` has a byte-identical twin below `b`, and vice versa.
void expect_same_tree(const fs::path& a, const fs::path& b) {
  std::size_t n = 0;
  for (const auto& e : fs::recursive_directory_iterator(a)) {
    if (!e.is_regular_file()) continue;
    const auto rel = fs::relative(e.path(), a);
    ASSERT_TRUE(fs::exists(b / rel)) << rel;
    EXPECT_EQ(slurp(e.path()), slurp(b / rel)) << rel;
    ++n;
  }
  std::size_t m = 0;
  for (const auto& e : fs::recursive_directory_iterator(b)) m += e.is_regular_file();
  EXPECT_EQ(n, m);
  EXPECT_GT(n, 0u);
}

class Cli : public testing::Test {
 protected:
  static fs::path root;
  static void SetUpTestSuite() {
    root = fs::temp_directory_path() / ("epf_cli_test_" + std::to_string(::getpid()));
    fs::remove_all(root);
    ASSERT_EQ(epf_run({"synth", "--seed", "4", "--from", "2016-01-01", "--to", "2017-12-31", "--out",
                       (root / "data").string()}),
              0);
  }
  static void TearDownTestSuite() { fs::remove_all(root); }
  static std::string prices() { return (root / "data" / "prices.csv").string(); }
  static std::string renewables() { return (root / "data" / "renewables.csv").string(); }
  static std::string out(const std::string& name) { return (root / name).string(); }
};

fs::path Cli::root;

}  // namespace

TEST_F(Cli, SynthIsReproducibleAndSeedSensitive) {
  ASSERT_EQ(epf_run({"synth", "--seed", "4", "--from", "2016-01-01", "--to", "2017-12-31", "--out", out("s4")}), 0);
  expect_same_tree(root / "data", out("s4"));
  ASSERT_EQ(epf_run({"synth", "--seed", "5", "--from", "2016-01-01", "--to", "2017-12-31", "--out", out("s5")}), 0);
  EXPECT_NE(slurp(root / "s4" / "prices.csv"), slurp(root / "s5" / "prices.csv"));
}

TEST_F(Cli, SynthWithoutSeedIsUsageError) {
  EXPECT_EQ(epf_run({"synth", "--from", "2016-01-01", "--to", "2016-01-31", "--out", out("noseed")}), 2);
}

TEST_F(Cli, ToBeforeFromIsUsageError) {
  EXPECT_EQ(epf_run({"backtest", "--prices", prices(), "--models", "naive", "--from", "2017-12-31", "--to",
                     "2017-12-01", "--out", out("bad")}),
            2);
  EXPECT_FALSE(fs::exists(out("bad")));
}

TEST_F(Cli, UnknownFlagAndMissingKeyAreUsageErrors) {
  EXPECT_EQ(epf_run({"backtest", "--nonsense"}), 2);
  EXPECT_EQ(epf_run({"backtest", "--prices", prices(), "--from", "2017-12-01", "--to", "2017-12-31"}), 2);
  EXPECT_EQ(epf_run({}), 2);
}

TEST_F(Cli, ModuleErrorsExitOne) {
  EXPECT_EQ(epf_run({"backtest", "--prices", out("missing.csv"), "--models", "naive", "--from", "2017-12-01",
                     "--to", "2017-12-31", "--out", out("m1")}),
            1);
  EXPECT_EQ(epf_run({"backtest", "--prices", prices(), "--models", "no-such-model", "--from", "2017-12-01", "--to",
                     "2017-12-31", "--out", out("m2")}),
            1);
}

TEST_F(Cli, BacktestWritesHeadedLedgersAndTable) {
  const auto before = slurp(prices());
  ASSERT_EQ(epf_run({"backtest", "--prices", prices(), "--models", "naive,lear", "--from", "2017-12-01", "--to",
                     "2017-12-31", "--window-years", "1", "--out", out("bt")}),
            0);
  EXPECT_EQ(slurp(prices()), before);
  for (const auto* f : {"ledger_naive.csv", "ledger_lear.csv", "yearly_mae.txt", "yearly_mae.csv", "acf_naive.csv",
                        "errors_lear.csv", "pacf_naive.svg", "boxplot_hour_naive.svg", "overlay_lear.svg"}) {
    ASSERT_TRUE(fs::exists(root / "bt" / f)) << f;
    const auto text = slurp(root / "bt" / f);
    const std::string head = std::string("epf ") + epf::kVersion + " backtest seed=none config=";
    EXPECT_NE(text.find(head), std::string::npos) << f;
    EXPECT_LT(text.find(head), 8u) << f;
  }
  const auto r = epf::backtest::read_ledger_file((root / "bt" / "ledger_naive.csv").string());
  EXPECT_EQ(r.model_id, "naive");
  EXPECT_EQ(r.days.size(), 31u);
}

TEST_F(Cli, BacktestOutputsIndependentOfJobs) {
  const std::vector<std::string> base{"backtest",   "--prices", prices(), "--renewables", renewables(),
                                      "--models",   "naive,dnn-emb-c2+renew",         "--from",
                                      "2017-12-25", "--to",     "2017-12-31",         "--window-years",
                                      "1",          "--epochs", "1",                  "--seed",
                                      "3",          "--save-models"};
  auto a = base, b = base;
  a.insert(a.end(), {"--jobs", "1", "--out", out("j1")});
  b.insert(b.end(), {"--jobs", "3", "--out", out("j3")});
  ASSERT_EQ(epf_run(a), 0);
  ASSERT_EQ(epf_run(b), 0);
  expect_same_tree(out("j1"), out("j3"));
  EXPECT_TRUE(fs::exists(root / "j1" / "models" / "dnn-emb-c2_renew.json"));
}

TEST_F(Cli, DnnBacktestNeedsSeed) {
  EXPECT_EQ(epf_run({"backtest", "--prices", prices(), "--models", "dnn-emb-c1", "--from", "2017-12-30", "--to",
                     "2017-12-31", "--out", out("ns")}),
            2);
}

TEST_F(Cli, ConfigFileMatchesFlags) {
  {
    std::ofstream cfg(root / "run.cfg");
    cfg << "# naive run\nprices = " << prices() << "\nmodels = naive\nfrom = 2017-12-01\nto = 2017-12-31\n"
        << "window_years = 1\nout = " << out("viacfg") << '\n';
  }
  ASSERT_EQ(epf_run({"backtest", "--config", (root / "run.cfg").string()}), 0);
  ASSERT_EQ(epf_run({"backtest", "--prices", prices(), "--models", "naive", "--from", "2017-12-01", "--to",
                     "2017-12-31", "--window-years", "1", "--out", out("viaflags")}),
            0);
  expect_same_tree(out("viacfg"), out("viaflags"));
  // A flag overrides the file and changes the hash.
  ASSERT_EQ(epf_run({"backtest", "--config", (root / "run.cfg").string(), "--to", "2017-12-30", "--out",
                     out("override")}),
            0);
  const auto r = epf::backtest::read_ledger_file((root / "override" / "ledger_naive.csv").string());
  EXPECT_EQ(r.days.size(), 30u);
  EXPECT_NE(slurp(root / "override" / "yearly_mae.txt").substr(0, 60),
            slurp(root / "viacfg" / "yearly_mae.txt").substr(0, 60));
}

TEST_F(Cli, StatsOnTwoLedgersGivesOnePairwiseP) {
  ASSERT_EQ(epf_run({"backtest", "--prices", prices(), "--models", "naive,lear", "--from", "2017-11-01", "--to",
                     "2017-12-31", "--window-years", "1", "--out", out("st_bt")}),
            0);
  ASSERT_EQ(epf_run({"stats", (root / "st_bt" / "ledger_naive.csv").string(),
                     (root / "st_bt" / "ledger_lear.csv").string(), "--out", out("st")}),
            0);
  std::ifstream in(root / "st" / "pairwise.csv");
  std::string line;
  std::vector<std::vector<double>> p;
  bool header = true;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (header) {
      header = false;
      continue;
    }
    std::istringstream cells(line.substr(line.find(',') + 1));
    std::vector<double> row;
    for (std::string c; std::getline(cells, c, ',');) row.push_back(std::stod(c));
    p.push_back(row);
  }
  ASSERT_EQ(p.size(), 2u);
  ASSERT_EQ(p[0].size(), 2u);
  EXPECT_EQ(p[0][0], 1.0);
  EXPECT_EQ(p[0][1], p[1][0]);
  EXPECT_GE(p[0][1], 0.0);
  EXPECT_LE(p[0][1], 1.0);
  EXPECT_TRUE(fs::exists(root / "st" / "ranking.csv"));
  EXPECT_TRUE(fs::exists(root / "st" / "pairwise.svg"));
  EXPECT_EQ(epf_run({"stats", (root / "st_bt" / "ledger_naive.csv").string(), "--out", out("st1")}), 2);
}

TEST_F(Cli, EmbeddingsExportAndOrdinalRefusal) {
  ASSERT_EQ(epf_run({"backtest", "--prices", prices(), "--models", "dnn-emb-c1,dnn-ord-c1", "--from", "2017-12-31",
                     "--to", "2017-12-31", "--window-years", "1", "--epochs", "1", "--seed", "2", "--save-models",
                     "--out", out("emb_bt")}),
            0);
  ASSERT_EQ(epf_run({"embeddings", "--model", (root / "emb_bt" / "models" / "dnn-emb-c1.json").string(), "--out",
                     out("emb")}),
            0);
  for (const auto* f : {"emb_hour_vectors.tsv", "emb_hour_metadata.tsv", "emb_hour_neighbors.csv", "emb_hour_pca.svg",
                        "emb_month_vectors.tsv"})
    EXPECT_TRUE(fs::exists(root / "emb" / f)) << f;
  EXPECT_EQ(epf_run({"embeddings", "--model", (root / "emb_bt" / "models" / "dnn-ord-c1.json").string(), "--out",
                     out("emb_ord")}),
            1);
}

TEST_F(Cli, HpfcMatchesQuotes) {
  ASSERT_EQ(epf_run({"hpfc", "--prices", prices(), "--quotes",
                     std::string(EPF_TEST_DATA_DIR) + "/quotes/quarter_and_months.csv", "--out", out("hp")}),
            0);
  std::ifstream in(root / "hp" / "arbitrage.csv");
  std::string line;
  int rows = 0;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#' || line.rfind("delivery_start", 0) == 0) continue;
    EXPECT_LE(std::abs(std::stod(line.substr(line.rfind(',') + 1))), 1e-9) << line;
    ++rows;
  }
  EXPECT_GT(rows, 0);
  EXPECT_TRUE(fs::exists(root / "hp" / "hpfc.csv"));
  EXPECT_TRUE(fs::exists(root / "hp" / "profile.csv"));
}

TEST_F(Cli, LtfScoresEveryYearAfterTheFirst) {
  ASSERT_EQ(epf_run({"ltf", "--prices", prices(), "--out", out("ltf")}), 0);
  const auto text = slurp(root / "ltf" / "ltf_scores.csv");
  EXPECT_NE(text.find("ltf-dummy,2017,"), std::string::npos);
  EXPECT_NE(text.find("ltf-sin,2017,"), std::string::npos);
  EXPECT_EQ(text.find(",2016,"), std::string::npos);
  EXPECT_EQ(epf_run({"ltf", "--prices", prices(), "--years", "2016", "--out", out("ltf_bad")}), 1);
}

TEST_F(Cli, GradcheckPasses) { EXPECT_EQ(epf_run({"gradcheck", "--count", "10"}), 0); }
