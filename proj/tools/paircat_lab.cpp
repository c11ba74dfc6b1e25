#include <fstream>
#include <iostream>
#include <map>

#include <CLI11.hpp>
#include <omp.h>

#include "commands.hpp"
#include "paircat/io.hpp"

using paircat::cli::json;
namespace fs = std::filesystem;

namespace {

struct SubOptions {
  std::string config;
  std::string out;
  int threads = -1;
  std::vector<std::string> sets;
  std::map<std::string, std::vector<std::string>> flags;  // path -> tokens
};

json load_config(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw paircat::ConfigError("cannot read config " + path);
  try {
    return json::parse(f);
  } catch (const json::parse_error& e) {
    throw paircat::ConfigError("config " + path + " is not valid JSON: " + e.what());
  }
}

// defaults < config file < --set < dedicated flags
int run(const paircat::cli::CommandSpec& spec, CLI::App& sub, const SubOptions& o) {
  json cfg = spec.defaults;
  if (!o.config.empty()) paircat::cli::merge_checked(cfg, load_config(o.config));
  for (const auto& s : o.sets) paircat::cli::apply_override(cfg, s);
  for (const auto& f : spec.flags)
    if (sub.count(f.flag) > 0) paircat::cli::apply_flag(cfg, f.path, o.flags.at(f.path));
  if (!o.out.empty()) cfg["out_dir"] = o.out;
  if (o.threads >= 0) cfg["threads"] = o.threads;

  const int threads = cfg.at("threads").get<int>();
  if (threads < 0) throw paircat::ConfigError("threads must be non-negative");
  if (threads > 0) omp_set_num_threads(threads);
  const fs::path out = cfg.at("out_dir").get<std::string>();
  fs::create_directories(out);

  json extra = spec.run(cfg, out);
  json m = paircat::io::manifest(spec.name, cfg, extra.value("tolerances", json::object()));
  for (auto it = extra.begin(); it != extra.end(); ++it)
    if (it.key() != "tolerances") m[it.key()] = it.value();
  const std::string name = spec.name + ".manifest.json";
  paircat::io::write_json(out / name, m);
  std::cout << "wrote " << (out / name).string() << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerics for bosonic cat and pair-cat codes"};
  app.set_version_flag("--version", PAIRCAT_VERSION);
  app.require_subcommand(1);

  const auto& specs = paircat::cli::commands();
  std::vector<SubOptions> opts(specs.size());
  std::vector<CLI::App*> subs;
  for (size_t i = 0; i < specs.size(); ++i) {
    const auto& s = specs[i];
    auto& o = opts[i];
    CLI::App* sub = app.add_subcommand(s.name, s.help);
    sub->add_option("--config", o.config, "JSON config; unknown keys are rejected");
    sub->add_option("--out", o.out, "output directory (config key out_dir)");
    sub->add_option("--threads", o.threads, "OpenMP threads, 0 for the runtime default");
    sub->add_option("--set", o.sets, "override a config value, key.sub=value")->take_all();
    for (const auto& f : s.flags) sub->add_option(f.flag, o.flags[f.path], f.help)->delimiter(',');
    subs.push_back(sub);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    for (size_t i = 0; i < specs.size(); ++i)
      if (subs[i]->parsed()) return run(specs[i], *subs[i], opts[i]);
  } catch (const paircat::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const json::exception& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const paircat::TruncationError& e) {
    std::cerr << "truncation error: " << e.what() << '\n';
    return 3;
  } catch (const paircat::NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << '\n';
    return 4;
  } catch (const fs::filesystem_error& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "numerical error: " << e.what() << '\n';
    return 4;
  }
  return 2;
}
