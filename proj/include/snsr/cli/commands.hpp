#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "snsr/cli/io_util.hpp"

namespace snsr::cli {

struct CommandSpec {
  std::string name;
  std::string description;
  // Flat object of parameters with their default values; the value type
  // (bool, integer, real, string) decides how a flag is parsed.
  nlohmann::json defaults;
  void (*run)(const nlohmann::json& config, RunContext& ctx, std::ostream& out);
};

const std::vector<CommandSpec>& commands();

}  // namespace snsr::cli
