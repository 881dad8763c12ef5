#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "CLI11.hpp"

namespace interactee::cli {

using Runner = std::function<void()>;
using CommandTable = std::vector<std::pair<CLI::App*, Runner>>;

void add_data_commands(CLI::App& app, CommandTable& table);
void add_model_commands(CLI::App& app, CommandTable& table);
void add_app_commands(CLI::App& app, CommandTable& table);

}  // namespace interactee::cli
