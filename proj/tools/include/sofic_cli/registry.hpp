#pragma once

#include "sofic_cli/output.hpp"

#include <CLI11.hpp>

#include <functional>
#include <map>

namespace sofic::cli {

using Handler = std::function<int(RunContext&)>;
using Registry = std::map<const CLI::App*, Handler>;

void register_graph_commands(CLI::App& app, Registry& registry);
void register_dpp_commands(CLI::App& app, Registry& registry);
void register_coupling_commands(CLI::App& app, Registry& registry);

}  // namespace sofic::cli
