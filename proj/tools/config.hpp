#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "fibrenorm/pipeline.hpp"

namespace fibrenorm {

// Flat TOML subset: [section] headers, key = value with numbers, booleans,
// double-quoted strings and flat numeric arrays, # comments. Keys come back
// as "section.key".
using TomlValue = std::variant<double, bool, std::string, std::vector<double>>;
using TomlTable = std::map<std::string, TomlValue>;

TomlTable parse_toml(const std::string& text);

struct RunConfig {
  PipelineSetup setup;
  std::filesystem::path output_dir = ".";
  std::optional<std::filesystem::path> seed_checkpoint;
};

// Defaults for `degree`, overridden by the table. Throws usage on unknown
// keys, wrong types or invalid values.
RunConfig config_from_table(const TomlTable& table, int degree);
RunConfig load_config(const std::filesystem::path& path, std::optional<int> degree);
// Degree parity and positive tolerances.
void validate_config(const RunConfig& c);

}  // namespace fibrenorm
