#include "sofic_cli/cli.hpp"

#include "sofic/error.hpp"
#include "sofic_cli/registry.hpp"
#include "sofic_cli/specs.hpp"

#include <Eigen/Core>
#include <json.hpp>

#include <algorithm>
#include <chrono>

#ifndef SOFIC_VERSION
#define SOFIC_VERSION "unknown"
#endif

namespace sofic::cli {

namespace {

const std::vector<std::string> kValueOptions{"--seed", "--out", "--jobs", "--config"};

std::string json_scalar(const nlohmann::json& v) {
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

// Config JSON keys become "--key value" tokens placed before the command-line
// options, so that explicit flags win under the take-last policy.
std::vector<std::string> expand_config(const std::string& path, std::string& command) {
  nlohmann::json config;
  try {
    config = nlohmann::json::parse(read_file(path));
  } catch (const nlohmann::json::exception& ex) {
    throw UsageError("config " + path + ": " + ex.what());
  }
  if (!config.is_object()) throw UsageError("config " + path + ": expected a JSON object");
  std::vector<std::string> tokens;
  for (const auto& [key, value] : config.items()) {
    if (key == "command") {
      if (command.empty()) command = json_scalar(value);
      continue;
    }
    if (key == "config") throw UsageError("config " + path + ": nested config is not allowed");
    if (value.is_boolean()) {
      if (value.get<bool>()) tokens.push_back("--" + key);
      continue;
    }
    std::string text;
    if (value.is_array()) {
      for (std::size_t i = 0; i < value.size(); ++i) {
        if (i > 0) text += ',';
        text += json_scalar(value[i]);
      }
    } else {
      text = json_scalar(value);
    }
    tokens.push_back("--" + key);
    tokens.push_back(text);
  }
  return tokens;
}

nlohmann::json option_values(const CLI::App& app) {
  nlohmann::json params = nlohmann::json::object();
  for (const CLI::Option* opt : app.get_options()) {
    if (opt->get_lnames().empty()) continue;
    const auto& name = opt->get_lnames().front();
    if (name == "help" || name == "config") continue;
    if (opt->get_type_size() == 0) {
      params[name] = opt->count() > 0;
    } else if (opt->count() > 0) {
      params[name] = opt->results().back();
    } else {
      params[name] = opt->get_default_str();
    }
  }
  return params;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"sofic: determinantal measures, sofic approximations and couplings", "sofic"};
  app.option_defaults()->always_capture_default()->multi_option_policy(
      CLI::MultiOptionPolicy::TakeLast);
  app.require_subcommand(1);
  app.fallthrough();

  RunContext ctx;
  ctx.out = &out;
  ctx.err = &err;
  std::string out_dir = "sofic-out";
  std::string config_path;
  app.add_option("--seed", ctx.seed, "Base random seed");
  app.add_option("--out", out_dir, "Output directory");
  app.add_option("--jobs", ctx.jobs, "Worker threads for multi-instance runs")
      ->check(CLI::PositiveNumber);
  app.add_option("--config", config_path, "JSON file whose keys are option names");

  Registry registry;
  register_graph_commands(app, registry);
  register_dpp_commands(app, registry);
  register_coupling_commands(app, registry);

  try {
    // locate the subcommand and config path before CLI11 sees the tokens
    std::string command;
    std::size_t command_pos = args.size();
    for (std::size_t i = 0; i < args.size(); ++i) {
      const auto& a = args[i];
      if (a == "--config" && i + 1 < args.size()) config_path = args[i + 1];
      if (a.rfind("--config=", 0) == 0) config_path = a.substr(9);
      if (std::find(kValueOptions.begin(), kValueOptions.end(), a) != kValueOptions.end()) {
        ++i;
        continue;
      }
      if (command.empty() && !a.empty() && a[0] != '-') {
        command = a;
        command_pos = i;
      }
    }
    std::vector<std::string> from_config;
    if (!config_path.empty()) from_config = expand_config(config_path, command);

    std::vector<std::string> tokens;
    if (!command.empty()) tokens.push_back(command);
    tokens.insert(tokens.end(), from_config.begin(), from_config.end());
    for (std::size_t i = 0; i < args.size(); ++i) {
      if (i != command_pos) tokens.push_back(args[i]);
    }
    std::reverse(tokens.begin(), tokens.end());
    app.parse(tokens);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, err, err);
    err << app.help();
    return 2;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }

  const CLI::App* sub = app.get_subcommands().front();
  ctx.out_dir = out_dir;
  const auto started = std::chrono::steady_clock::now();
  int code = 0;
  try {
    code = registry.at(sub)(ctx);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const CapacityExceeded& e) {
    err << "capacity exceeded: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();

  nlohmann::json manifest;
  manifest["command"] = sub->get_name();
  manifest["seed"] = ctx.seed;
  manifest["version"] = SOFIC_VERSION;
  manifest["eigen_version"] = std::to_string(EIGEN_WORLD_VERSION) + "." +
                              std::to_string(EIGEN_MAJOR_VERSION) + "." +
                              std::to_string(EIGEN_MINOR_VERSION);
  auto params = option_values(app);
  params.update(option_values(*sub));
  manifest["parameters"] = std::move(params);
  manifest["outputs"] = ctx.written;
  manifest["exit_code"] = code;
  manifest["wall_time_seconds"] = seconds;
  try {
    ctx.write("manifest.json", manifest.dump(2) + "\n");
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return code;
}

}  // namespace sofic::cli
