#pragma once

#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

namespace paircat::cli {

using json = nlohmann::json;

// A dedicated flag writes its tokens to one config path. Arrays in the defaults
// take every token; scalars take exactly one.
struct FlagSpec {
  std::string flag;  // e.g. "--gammas"
  std::string path;  // JSON pointer into the config, e.g. "/gammas"
  std::string help;
};

struct CommandSpec {
  std::string name;
  std::string help;
  json defaults;
  std::vector<FlagSpec> flags;
  // Writes outputs into out_dir and returns manifest additions (outputs, cutoffs, summaries).
  std::function<json(const json& cfg, const std::filesystem::path& out_dir)> run;
};

const std::vector<CommandSpec>& commands();

// Overlays patch on base. Keys absent from base and type mismatches throw ConfigError.
void merge_checked(json& base, const json& patch, const std::string& where = "");
// "a.b=value"; the value is parsed as JSON when possible and kept as a string otherwise.
void apply_override(json& cfg, const std::string& assignment);
// Token list for a flag, typed by the default at that path.
void apply_flag(json& cfg, const std::string& path, const std::vector<std::string>& tokens);

}  // namespace paircat::cli
