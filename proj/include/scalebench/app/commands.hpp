#pragma once

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "scalebench/app/config.hpp"
#include "scalebench/app/output.hpp"

namespace scalebench::app {

struct Context {
  bool quiet = false;
  std::ostream* log = nullptr;  // progress lines; may be null
};

struct Command {
  std::string group;  // tipping, glass, exo, cycles, ghg
  std::string name;
  std::string help;
  Schema schema;
  std::function<Report(const Json& config, const Context& ctx)> run;
};

/// Every subcommand, grouped in a fixed order.
[[nodiscard]] const std::vector<Command>& commands();

}  // namespace scalebench::app
