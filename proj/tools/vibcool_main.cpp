// Command-line front end; thin wrapper over the vibcool C API.

#include <cstdio>
#include <string>

#include <CLI11.hpp>

#include "vibcool/vibcool.h"

namespace {

void print_progress(void*, const char* line) { std::printf("%s\n", line); }

int fail(vibcool_session* session, vibcool_status st) {
  std::fprintf(stderr, "vibcool: %s\n", vibcool_last_error(session));
  vibcool_close(session);
  return static_cast<int>(st);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Optimal-control pulse shaping and optical-pumping simulation "
               "for vibrational cooling"};
  app.set_version_flag("--version", vibcool_version());
  app.require_subcommand(1);

  std::string config_path, out_dir, variant;
  int max_iter = -1;
  bool quiet = false;

  const auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--config", config_path, "Config file (sectioned key = value)")
        ->required();
    cmd->add_option("--out", out_dir, "Output directory (overrides the config)");
    cmd->add_option("--max-iter", max_iter, "Override the iteration limit");
    cmd->add_option("--variant", variant, "Functional variant: sym or ass")
        ->check(CLI::IsMember({"sym", "ass", "symmetrized", "assembly"}));
    cmd->add_flag("--quiet", quiet, "Suppress per-iteration progress output");
  };

  for (const char* name : {"solve", "fcmap", "optimize", "cool", "pipeline"}) {
    add_common(app.add_subcommand(
        name, std::string("Run the ") + name + " stage and write its CSV artifacts"));
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;  // bad usage is a configuration error
  }
  const std::string stage = app.get_subcommands().front()->get_name();

  vibcool_session* session = nullptr;
  vibcool_status st = vibcool_open(config_path.c_str(), &session);
  if (st != VIBCOOL_OK) return fail(nullptr, st);

  if (max_iter >= 0) {
    st = vibcool_set(session, "krotov.max_iterations", std::to_string(max_iter).c_str());
    if (st != VIBCOOL_OK) return fail(session, st);
  }
  if (!variant.empty()) {
    const char* v = (variant == "sym" || variant == "symmetrized") ? "symmetrized" : "assembly";
    st = vibcool_set(session, "functional.variant", v);
    if (st != VIBCOOL_OK) return fail(session, st);
  }
  if (!quiet) vibcool_set_progress(session, print_progress, nullptr);

  st = vibcool_run(session, stage.c_str(), out_dir.empty() ? nullptr : out_dir.c_str());
  if (st != VIBCOOL_OK) return fail(session, st);

  vibcool_close(session);
  return 0;
}
