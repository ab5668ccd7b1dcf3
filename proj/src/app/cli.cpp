#include "scalebench/app/cli.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <chrono>
#include <ctime>
#include <map>
#include <memory>
#include <optional>
#include <ostream>

#include "scalebench/app/commands.hpp"
#include "scalebench/core/error.hpp"

#ifndef SCALEBENCH_VERSION
#define SCALEBENCH_VERSION "0.0.0"
#endif

namespace scalebench::app {

namespace {

std::string utc_now() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string scalar_text(const Json& v) {
  if (v.is_number_float()) return format_number(v.get<double>());
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

void print_summary(const Json& summary, Format format, std::ostream& os) {
  if (format == Format::json) {
    os << summary.dump(2) << "\n";
    return;
  }
  for (const auto& [k, v] : summary.items()) os << k << "=" << scalar_text(v) << "\n";
}

std::uint64_t parse_seed(const std::string& s) {
  std::uint64_t v = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    throw_validation("invalid_seed", "--seed must be an unsigned 64-bit integer, got '" + s + "'");
  }
  return v;
}

struct Globals {
  std::string config;
  std::string seed;
  std::string out;
  std::string format = "csv";
  bool quiet = false;
  bool dump_config = false;
};

int report_error(std::ostream& err, const std::string& code, const std::string& msg, int exit_code) {
  err << "error: " << msg << "\nerror_code=" << code << "\n";
  return exit_code;
}

int execute(const Command& cmd, const Globals& g, const std::map<std::string, std::string>& flag_values,
            std::ostream& out, std::ostream& err) {
  const std::string started = utc_now();
  const Format format = g.format == "json" ? Format::json : Format::csv;
  Json document;
  if (!g.config.empty()) document = load_config_file(g.config);
  std::map<std::string, std::string> flags = flag_values;
  const bool has_seed = std::any_of(cmd.schema.begin(), cmd.schema.end(), [](const Param& p) { return p.name == "seed"; });
  if (!g.seed.empty()) {
    const std::uint64_t s = parse_seed(g.seed);
    if (has_seed) flags["seed"] = std::to_string(s);
  }
  const Json config = resolve_config(cmd.schema, document, flags);
  if (g.dump_config) {
    Json doc = Json::object();
    doc["schema_version"] = kSchemaVersion;
    for (const auto& [k, v] : config.items()) doc[k] = v;
    out << doc.dump(2) << "\n";
    return kExitOk;
  }

  Context ctx{g.quiet, &err};
  const Report report = cmd.run(config, ctx);

  if (!g.out.empty()) {
    const auto files = emit(report, format, g.out);
    Json manifest;
    manifest["subcommand"] = cmd.group + " " + cmd.name;
    manifest["config"] = config;
    manifest["seed"] = has_seed ? config["seed"] : Json(nullptr);
    manifest["version"] = version();
    manifest["start_time"] = started;
    manifest["end_time"] = utc_now();
    Json outputs = Json::array();
    for (const auto& f : files) outputs.push_back({{"file", f.name}, {"sha256", f.sha256}, {"bytes", f.bytes}});
    manifest["outputs"] = std::move(outputs);
    write_manifest(g.out, manifest);
    if (!g.quiet) print_summary(report.summary, format, out);
    return kExitOk;
  }
  if (report.tables.empty()) {
    print_summary(report.summary, format, out);
    return kExitOk;
  }
  const Table& primary = report.tables.front();
  out << (format == Format::csv ? render_csv(primary) : render_json(primary));
  if (!g.quiet && !report.summary.empty()) print_summary(report.summary, Format::csv, err);
  return kExitOk;
}

}  // namespace

const char* version() noexcept { return SCALEBENCH_VERSION; }

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Simulation workbench: tipping, glass MD, exocytosis, business cycles, greenhouse feedbacks",
               "scalebench"};
  app.require_subcommand(1);
  app.set_version_flag("--version", version());
  Globals g;
  app.add_option("--config", g.config, "JSON config file (schema_version 1)");
  app.add_option("--seed", g.seed, "RNG seed (unsigned 64-bit)");
  app.add_option("--out", g.out, "output directory; files plus manifest.json");
  app.add_option("--format", g.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  app.add_flag("--quiet", g.quiet, "no progress or summary chatter");
  app.add_flag("--dump-config", g.dump_config, "print the resolved config and exit");

  struct Selected {
    CLI::App* app;
    const Command* cmd;
  };
  std::vector<Selected> all;
  std::map<const Command*, std::map<std::string, std::string>> values;
  std::map<std::string, CLI::App*> groups;
  for (const Command& c : commands()) {
    CLI::App*& grp = groups[c.group];
    if (!grp) {
      grp = app.add_subcommand(c.group, c.group + " commands");
      grp->require_subcommand(1);
      grp->fallthrough();
    }
    CLI::App* sub = grp->add_subcommand(c.name, c.help);
    sub->fallthrough();
    auto& slot = values[&c];
    for (const Param& p : c.schema) {
      sub->add_option_function<std::string>(
          "--" + flag_name(p.name), [&slot, name = p.name](const std::string& v) { slot[name] = v; },
          p.help + " [" + (p.kind == ParamKind::text ? p.default_value.get<std::string>() : p.default_value.dump()) + "]");
    }
    all.push_back({sub, &c});
  }

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    return report_error(err, "usage_error", e.what(), kExitUsage);
  }

  const Selected* chosen = nullptr;
  for (const auto& s : all) {
    if (s.app->parsed()) chosen = &s;
  }
  if (!chosen) return report_error(err, "usage_error", "no subcommand given", kExitUsage);

  try {
    return execute(*chosen->cmd, g, values[chosen->cmd], out, err);
  } catch (const Error& e) {
    const int code = e.kind() == ErrorKind::validation ? kExitValidation
                     : e.kind() == ErrorKind::numerical ? kExitNumerical
                                                         : kExitUsage;
    return report_error(err, e.code(), e.what(), code);
  } catch (const nlohmann::json::exception& e) {
    return report_error(err, "invalid_config", e.what(), kExitValidation);
  } catch (const std::exception& e) {
    return report_error(err, "internal_error", e.what(), kExitNumerical);
  }
}

}  // namespace scalebench::app
