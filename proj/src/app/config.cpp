#include "scalebench/app/config.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "scalebench/core/error.hpp"

namespace scalebench::app {

namespace {

[[noreturn]] void invalid(const std::string& msg) { throw_validation("invalid_config", msg); }

void check_value(const Param& p, const Json& v) {
  const std::string& n = p.name;
  switch (p.kind) {
    case ParamKind::number:
      if (!v.is_number()) invalid("'" + n + "' must be a number");
      return;
    case ParamKind::integer:
      if (!v.is_number_integer()) invalid("'" + n + "' must be an integer");
      return;
    case ParamKind::boolean:
      if (!v.is_boolean()) invalid("'" + n + "' must be true or false");
      return;
    case ParamKind::text:
      if (!v.is_string()) invalid("'" + n + "' must be a string");
      if (!p.choices.empty() && std::find(p.choices.begin(), p.choices.end(), v.get<std::string>()) == p.choices.end()) {
        std::string all;
        for (const auto& c : p.choices) all += (all.empty() ? "" : "|") + c;
        invalid("'" + n + "' must be one of " + all);
      }
      return;
    case ParamKind::optional_number:
      if (!v.is_null() && !v.is_number()) invalid("'" + n + "' must be a number or null");
      return;
    case ParamKind::number_list:
      if (v.is_null()) return;
      if (!v.is_array() || !std::all_of(v.begin(), v.end(), [](const Json& x) { return x.is_number(); })) {
        invalid("'" + n + "' must be an array of numbers or null");
      }
      return;
    case ParamKind::rate_map:
      if (!v.is_object()) invalid("'" + n + "' must be an object of numbers");
      for (const auto& [k, x] : v.items()) {
        if (!x.is_number()) invalid("'" + n + "." + k + "' must be a number");
      }
      return;
  }
}

}  // namespace

std::string flag_name(const std::string& param) {
  std::string s = param;
  std::replace(s.begin(), s.end(), '_', '-');
  return s;
}

Json load_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw_validation("config_not_found", "cannot open config file " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  const Json doc = Json::parse(text.str(), nullptr, false);
  if (doc.is_discarded() || !doc.is_object()) invalid(path.string() + " is not a JSON object");
  if (!doc.contains("schema_version")) invalid("config is missing schema_version");
  if (doc["schema_version"] != kSchemaVersion) {
    invalid("unsupported schema_version " + doc["schema_version"].dump() + " (expected 1)");
  }
  return doc;
}

Json parse_flag_value(const Param& p, const std::string& text) {
  if (p.kind == ParamKind::text) return Json(text);
  Json v = Json::parse(text, nullptr, false);
  if (v.is_discarded()) invalid("cannot parse --" + flag_name(p.name) + " value '" + text + "'");
  return v;
}

Json resolve_config(const Schema& schema, const Json& document, const std::map<std::string, std::string>& flags) {
  auto find = [&](const std::string& key) {
    return std::find_if(schema.begin(), schema.end(), [&](const Param& p) { return p.name == key; });
  };
  if (!document.is_null() && !document.is_object()) invalid("config must be a JSON object");
  if (document.is_object()) {
    for (const auto& [key, value] : document.items()) {
      if (key == "schema_version") continue;
      if (find(key) == schema.end()) invalid("unknown config key '" + key + "'");
    }
  }
  Json out = Json::object();
  for (const Param& p : schema) {
    Json v = p.default_value;
    if (document.is_object() && document.contains(p.name)) v = document[p.name];
    if (auto it = flags.find(p.name); it != flags.end()) v = parse_flag_value(p, it->second);
    check_value(p, v);
    out[p.name] = std::move(v);
  }
  return out;
}

}  // namespace scalebench::app
