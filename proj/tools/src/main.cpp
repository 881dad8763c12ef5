#include <cstdio>
#include <exception>

#include "commands.hpp"
#include "common.hpp"
#include "interactee/error.hpp"

int main(int argc, char** argv) {
  using namespace interactee::cli;

  CLI::App app{"Predicts where a person's interactee is and how large it is."};
  app.require_subcommand(1);
  CommandTable table;
  add_data_commands(app, table);
  add_model_commands(app, table);
  add_app_commands(app, table);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    for (auto& [sub, run] : table) {
      if (sub->parsed()) run();
    }
  } catch (const UsageError& e) {
    std::fprintf(stderr, "usage error: %s\n", e.what());
    return 2;
  } catch (const interactee::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  } catch (const nlohmann::json::exception& e) {
    std::fprintf(stderr, "error: malformed input: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
