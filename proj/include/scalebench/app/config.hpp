#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "scalebench/app/output.hpp"

namespace scalebench::app {

inline constexpr int kSchemaVersion = 1;

enum class ParamKind {
  number,
  integer,
  boolean,
  text,
  optional_number,  // number or null
  number_list,      // array of numbers or null
  rate_map,         // object of name -> number
};

struct Param {
  std::string name;
  ParamKind kind = ParamKind::number;
  Json default_value;
  std::string help;
  std::vector<std::string> choices;  // text only; empty means free text
};

using Schema = std::vector<Param>;

/// Parsed config file: a JSON object with schema_version == 1. Throws
/// `config_not_found` or `invalid_config`.
[[nodiscard]] Json load_config_file(const std::filesystem::path& path);

/// Flag text for a parameter: raw for text, JSON otherwise (so `0.5`,
/// `true`, `null`, `[0,1,0]` and `{"kappa":0.02}` all work).
[[nodiscard]] Json parse_flag_value(const Param& p, const std::string& text);

/// Defaults, then the config document, then flags. Unknown keys in the
/// document and ill-typed values throw `invalid_config` before anything
/// runs. The result lists every parameter in schema order.
[[nodiscard]] Json resolve_config(const Schema& schema, const Json& document,
                                  const std::map<std::string, std::string>& flags);

/// Flag spelling of a parameter name: underscores become hyphens.
[[nodiscard]] std::string flag_name(const std::string& param);

}  // namespace scalebench::app
