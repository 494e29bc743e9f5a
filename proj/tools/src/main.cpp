#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "galt/error.hpp"
#include "galt_cli/config.hpp"
#include "galt_cli/pipeline.hpp"

namespace {

int exit_code(galt::ErrorClass c) {
  switch (c) {
    case galt::ErrorClass::Config: return 2;
    case galt::ErrorClass::Io: return 3;
    case galt::ErrorClass::DegenerateData: return 4;
    case galt::ErrorClass::Numerical: return 5;
  }
  return 1;
}

std::string one_line(std::string s) {
  for (auto& c : s) {
    if (c == '\n' || c == '\r') c = ' ';
  }
  return s;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"CA-GALT / MFA-GALT analysis of open-ended survey answers"};
  app.require_subcommand(1);
  auto* analyze = app.add_subcommand("analyze", "Run the analysis described by a JSON config");
  std::string config_path;
  bool plots = false;
  std::optional<long> dims;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out_dir;
  analyze->add_option("config", config_path, "Run configuration (JSON)")->required();
  analyze->add_flag("--plots", plots, "Also write SVG factor maps");
  analyze->add_option("--dims", dims, "Number of axes to extract (overrides max_axes)");
  analyze->add_option("--seed", seed, "Permutation seed (overrides seed)");
  analyze->add_option("--out", out_dir, "Output directory (overrides output)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error:config:Usage: " << one_line(e.what()) << '\n';
    return 2;
  }

  try {
    auto cfg = galt::cli::load_config(config_path);
    if (dims) {
      if (*dims < 1) throw galt::Error(galt::ErrorClass::Config, "InvalidConfig", "--dims must be at least 1");
      cfg.max_axes = *dims;
    }
    if (seed) cfg.seed = *seed;
    if (out_dir) cfg.output = *out_dir;
    cfg.plots = plots;
    const auto outputs = galt::cli::run(cfg);
    for (const auto& name : outputs.names()) std::cout << (cfg.output / name).string() << '\n';
    return 0;
  } catch (const galt::Error& e) {
    std::cerr << "error:" << galt::to_string(e.error_class()) << ':' << e.name() << ": " << one_line(e.what())
              << '\n';
    return exit_code(e.error_class());
  } catch (const std::exception& e) {
    std::cerr << "error:internal:Unexpected: " << one_line(e.what()) << '\n';
    return 1;
  }
}
