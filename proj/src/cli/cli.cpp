#include "snsr/cli/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <map>
#include <ostream>

#include "CLI11.hpp"
#include "snsr/cli/commands.hpp"

namespace snsr::cli {

namespace {

using nlohmann::json;

std::string flag_name(std::string key) {
  std::replace(key.begin(), key.end(), '_', '-');
  return "--" + key;
}

json coerce(const json& def, const std::string& text, const std::string& key) {
  const auto bad = [&] { return Error(ErrorCode::invalid_argument, "invalid value '" + text + "' for " + flag_name(key)); };
  if (def.is_boolean()) {
    if (text == "true" || text == "1") return true;
    if (text == "false" || text == "0") return false;
    throw bad();
  }
  if (def.is_number_integer()) {
    std::size_t used = 0;
    long long v = 0;
    try {
      v = std::stoll(text, &used);
    } catch (const std::logic_error&) {
      throw bad();
    }
    if (used != text.size()) throw bad();
    return v;
  }
  if (def.is_number()) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(text, &used);
    } catch (const std::logic_error&) {
      throw bad();
    }
    if (used != text.size()) throw bad();
    return v;
  }
  return text;
}

// Merges a config file (a plain object or a previous run's manifest).
void merge_config_file(json& config, const std::string& command, const std::filesystem::path& path) {
  json j;
  try {
    j = json::parse(read_text_file(path));
  } catch (const json::exception& e) {
    throw Error(ErrorCode::parse, "malformed config " + path.string() + ": " + e.what());
  }
  if (j.contains("command") && j.contains("config")) {
    require(j.at("command") == command, ErrorCode::invalid_argument,
            "manifest " + path.string() + " is for command '" + j.at("command").get<std::string>() + "'");
    j = j.at("config");
  }
  require(j.is_object(), ErrorCode::parse, "config " + path.string() + " must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    require(config.contains(key), ErrorCode::invalid_argument, "unknown config key '" + key + "'");
    const json& def = config.at(key);
    const bool ok = def.is_boolean()          ? value.is_boolean()
                    : def.is_number_integer() ? value.is_number_integer()
                    : def.is_number()         ? value.is_number()
                                              : value.is_string();
    require(ok, ErrorCode::invalid_argument, "config key '" + key + "' has the wrong type");
    config[key] = value;
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Spectral neuro-symbolic reasoning toolkit", "snsr"};
  app.require_subcommand(1);
  std::string out_dir = ".";
  std::string config_path;
  std::map<std::string, std::map<std::string, std::string>> values;
  std::map<std::string, CLI::App*> subs;
  for (const CommandSpec& spec : commands()) {
    CLI::App* sub = app.add_subcommand(spec.name, spec.description);
    sub->add_option("--out-dir", out_dir, "directory for outputs and the manifest");
    sub->add_option("--config", config_path, "JSON config or manifest to start from");
    for (const auto& [key, def] : spec.defaults.items()) {
      sub->add_option(flag_name(key), values[spec.name][key], "default: " + def.dump());
    }
    subs[spec.name] = sub;
  }

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  for (const CommandSpec& spec : commands()) {
    CLI::App* sub = subs.at(spec.name);
    if (!sub->parsed()) continue;
    try {
      json config = spec.defaults;
      if (!config_path.empty()) merge_config_file(config, spec.name, config_path);
      for (const auto& [key, def] : spec.defaults.items()) {
        if (sub->count(flag_name(key)) > 0) config[key] = coerce(def, values[spec.name][key], key);
      }
      std::filesystem::create_directories(out_dir);
      RunContext ctx(out_dir);
      spec.run(config, ctx, out);
      ctx.write_manifest(spec.name, config);
      return 0;
    } catch (const Error& e) {
      err << "error: " << e.what() << '\n';
      return 1;
    } catch (const json::exception& e) {
      err << "error: " << e.what() << '\n';
      return 1;
    } catch (const std::exception& e) {
      err << "error: " << e.what() << '\n';
      return 1;
    }
  }
  return 2;
}

}  // namespace snsr::cli
