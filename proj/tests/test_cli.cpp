#include <gtest/gtest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

#include "commands.hpp"
#include "paircat/io.hpp"

using namespace paircat;
using cli::json;
namespace fs = std::filesystem;

namespace {
struct RunResult {
  int code;
  std::string out;
};

RunResult lab(const std::string& args) {
  const std::string cmd = std::string(PAIRCAT_LAB) + " " + args + " 2>&1";
  FILE* p = popen(cmd.c_str(), "r");
  std::string out;
  char buf[512];
  while (fgets(buf, sizeof buf, p)) out += buf;
  const int st = pclose(p);
  return {WIFEXITED(st) ? WEXITSTATUS(st) : -1, out};
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("paircat_cli_" + std::to_string(getpid())) / name;
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p);
  std::stringstream s;
  s << f.rdbuf();
  return s.str();
}

std::vector<std::vector<std::string>> read_csv(const fs::path& p) {
  std::vector<std::vector<std::string>> rows;
  std::ifstream f(p);
  std::string line;
  while (std::getline(f, line)) {
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string c;
    while (std::getline(ss, c, ',')) cells.push_back(c);
    rows.push_back(cells);
  }
  return rows;
}

const cli::CommandSpec& spec(const std::string& name) {
  for (const auto& c : cli::commands())
    if (c.name == name) return c;
  throw std::runtime_error("no command " + name);
}
}  // namespace

TEST(Io, NumberFormatting) {
  EXPECT_EQ(io::num(0.1), "0.10000000000000001");
  EXPECT_EQ(io::num(2.0), "2");
  EXPECT_EQ(io::num(std::numeric_limits<double>::infinity()), "inf");
  EXPECT_EQ(io::num(-std::numeric_limits<double>::infinity()), "-inf");
  EXPECT_EQ(io::num(std::nan("")), "nan");
  EXPECT_EQ(std::stod(io::num(1.0 / 3.0)), 1.0 / 3.0);
}

TEST(Io, CsvLayout) {
  io::Csv c({"a", "b"});
  c.add({"1", "2"});
  c.add({"x", "y"});
  EXPECT_EQ(c.rows(), 2u);
  EXPECT_EQ(c.str(), "a,b\n1,2\nx,y\n");
  EXPECT_THROW(c.add({"only"}), std::logic_error);
  const auto m = io::manifest("demo", json{{"k", 1}}, json::object());
  EXPECT_EQ(m.at("tool"), "paircat-lab");
  EXPECT_EQ(m.at("command"), "demo");
  EXPECT_FALSE(m.contains("timestamp"));
}

TEST(Config, MergeChecked) {
  json base = spec("fig-qfunc").defaults;
  cli::merge_checked(base, json{{"gamma", 1.5}, {"grid", {{"n_re", 5}}}});
  EXPECT_EQ(base["gamma"], 1.5);
  EXPECT_EQ(base["grid"]["n_re"], 5);
  EXPECT_EQ(base["grid"]["n_im"], 61);
  EXPECT_THROW(cli::merge_checked(base, json{{"gamme", 1.0}}), ConfigError);
  EXPECT_THROW(cli::merge_checked(base, json{{"cutoff", "big"}}), ConfigError);
  EXPECT_THROW(cli::merge_checked(base, json{{"cutoff", 2.5}}), ConfigError);
  // integral floats coerce to integers, integers widen to doubles
  cli::merge_checked(base, json{{"cutoff", 20.0}, {"gamma", 2}});
  EXPECT_TRUE(base["cutoff"].is_number_integer());
  EXPECT_TRUE(base["gamma"].is_number_float());

  cli::apply_override(base, "grid.n_im=7");
  EXPECT_EQ(base["grid"]["n_im"], 7);
  EXPECT_THROW(cli::apply_override(base, "grid.nope=7"), ConfigError);
  EXPECT_THROW(cli::apply_override(base, "novalue"), ConfigError);
  cli::apply_flag(base, "/gamma", {"1.25"});
  EXPECT_EQ(base["gamma"], 1.25);
}

TEST(Config, EveryCommandHasGlobals) {
  for (const auto& c : cli::commands()) {
    EXPECT_TRUE(c.defaults.contains("out_dir")) << c.name;
    EXPECT_TRUE(c.defaults.contains("threads")) << c.name;
    for (const auto& f : c.flags) EXPECT_TRUE(c.defaults.contains(json::json_pointer(f.path))) << c.name << f.flag;
  }
}

TEST(Cli, ExitCodes) {
  const fs::path d = scratch("exit");
  EXPECT_EQ(lab("--version").code, 0);
  EXPECT_NE(lab("").code, 0);
  EXPECT_EQ(lab("fig-dephasing --out " + d.string() + " --set gammas=[]").code, 2);
  EXPECT_EQ(lab("fig-dephasing --out " + d.string() + " --set nope=1").code, 2);
  EXPECT_EQ(lab("kl-report --out " + d.string() + " --set kmax=2.5").code, 2);
  EXPECT_EQ(lab("kl-report --out " + d.string() + " --config /nonexistent.json").code, 2);
  EXPECT_EQ(lab("fig-lossprob --out " + d.string() + " --set nbars=[0.5]").code, 2);
  const RunResult trunc = lab("kl-report --out " + d.string() + " --set cutoff=5");
  EXPECT_EQ(trunc.code, 3) << trunc.out;
}

TEST(Cli, ConfigPrecedence) {
  const fs::path d = scratch("prec");
  {
    std::ofstream f(d / "cfg.json");
    f << R"({"cutoff": 20, "kappa2": 2.0})";
  }
  auto cutoff_after = [&](const std::string& extra) {
    const RunResult r = lab("fig-dephasing --config " + (d / "cfg.json").string() + " --out " + d.string() +
                            " --gammas 1.0 --deltas 0 --kappa-ns 0.01 " + extra);
    EXPECT_EQ(r.code, 0) << r.out;
    return json::parse(slurp(d / "fig-dephasing.manifest.json"))["config"];
  };
  EXPECT_EQ(cutoff_after("")["cutoff"], 20);
  EXPECT_EQ(cutoff_after("")["kappa2"], 2.0);
  EXPECT_EQ(cutoff_after("--set cutoff=22")["cutoff"], 22);
  EXPECT_EQ(cutoff_after("--set cutoff=22 --cutoff 24")["cutoff"], 24);
}

TEST(Cli, DephasingSinglePoint) {
  const fs::path d = scratch("deph");
  const RunResult r = lab("fig-dephasing --out " + d.string() + " --gammas 1.5 --deltas 0 --kappa-ns 0.01");
  ASSERT_EQ(r.code, 0) << r.out;
  const auto rows = read_csv(d / "dephasing.csv");
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0], (std::vector<std::string>{"gamma", "delta", "kappa_n", "scaled_rate"}));
  EXPECT_NEAR(std::stod(rows[1][3]), 0.25094990995268218, 1e-12);
}

TEST(Cli, LatticeDecodes) {
  const fs::path d = scratch("lat");
  const RunResult r = lab("lattice --out " + d.string() + " --syndrome 2,1 --set certify=false");
  ASSERT_EQ(r.code, 0) << r.out;
  EXPECT_NE(r.out.find("a^3b"), std::string::npos) << r.out;
  const RunResult g = lab("lattice --out " + d.string() + " --syndrome -2,2 --set certify=false");
  EXPECT_NE(g.out.find("b^2"), std::string::npos) << g.out;
  const auto rows = read_csv(d / "lattice.csv");
  EXPECT_EQ(rows[0], (std::vector<std::string>{"n", "m", "region", "loss_label", "loss_gain_label"}));
  EXPECT_EQ(rows.size(), 50u);  // 7 x 7 window plus header
}

TEST(Cli, FidelityDeterministicAcrossThreadCounts) {
  const fs::path a = scratch("fa"), b = scratch("fb");
  const std::string common = " fig-fidelity --one-minus-eta 0.05,0.1";
  ASSERT_EQ(lab(common + " --threads 1 --out " + a.string()).code, 0);
  ASSERT_EQ(lab(common + " --threads 2 --out " + b.string()).code, 0);
  EXPECT_EQ(slurp(a / "fidelity.csv"), slurp(b / "fidelity.csv"));
  std::map<std::string, std::map<std::string, double>> f;
  for (const auto& row : read_csv(a / "fidelity.csv"))
    if (row[0] != "code") f[row[0]][row[1]] = std::stod(row[2]);
  for (const char* le : {"0.050000000000000003", "0.10000000000000001"}) {
    EXPECT_GT(f["paircat3"][le], f["concat"][le]);
    EXPECT_GT(f["concat"][le], f["singlerail"][le]);
  }
  const json m = json::parse(slurp(a / "fig-fidelity.manifest.json"));
  EXPECT_TRUE(m.contains("kraus_counts"));
}

TEST(Cli, QFunctionWritesFiveGrids) {
  const fs::path d = scratch("q");
  const RunResult r = lab("fig-qfunc --out " + d.string() + " --set grid.n_re=5 grid.n_im=4");
  ASSERT_EQ(r.code, 0) << r.out;
  int n = 0;
  for (const char* s : {"fock00", "fock11", "pair_coherent", "pair_cat", "two_mode_squeezed"}) {
    const auto rows = read_csv(d / (std::string("qfunc_") + s + ".csv"));
    ASSERT_EQ(rows.size(), 21u) << s;
    EXPECT_EQ(rows[0], (std::vector<std::string>{"re_gamma", "im_gamma", "value", "measure"}));
    const json h = json::parse(slurp(d / (std::string("qfunc_") + s + ".json")));
    EXPECT_EQ(h.at("kind"), "Q");
    EXPECT_NEAR(h.at("normalization").get<double>(), 1.0, 1e-3) << s;
    ++n;
  }
  EXPECT_EQ(n, 5);
}

TEST(Cli, JunctionAndKlOutputs) {
  const fs::path d = scratch("jk");
  ASSERT_EQ(lab("junction --out " + d.string() + " --set betas=[0,1]").code, 0);
  const auto cat = read_csv(d / "junction_cat.csv");
  ASSERT_EQ(cat.size(), 5u);
  for (size_t i = 1; i < cat.size(); ++i)
    if (cat[i][1] == "1" && cat[i][0] == "0") EXPECT_NEAR(std::stod(cat[i][2]), -0.014071, 1e-6);
  ASSERT_EQ(lab("kl-report --out " + d.string()).code, 0);
  const json kl = json::parse(slurp(d / "kl_report.json"));
  for (const auto& e : kl.at("entries"))
    if (e.at("left") != e.at("right") && e.at("left") != "1" && e.at("right") != "ab")
      EXPECT_TRUE(e.at("exact").get<bool>()) << e.dump();
}
