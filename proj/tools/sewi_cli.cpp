#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "sewi/cli.hpp"

int main(int argc, char** argv) {
  using namespace sewi;
  CLI::App app{"sEWI-FS solver for the periodic nonlinear Schroedinger equation"};
  app.require_subcommand(1);
  bool paper_scale = false;
  std::string out_dir;
  app.add_flag("--paper-scale", paper_scale, "use full-resolution reference and long-time settings");
  app.add_option("-o,--output-dir", out_dir, "override output_dir from the config");

  std::string path;
  auto* run = app.add_subcommand("run", "evolve one configuration");
  run->add_option("config", path, "config file")->required();

  std::string mode = "temporal";
  auto* converge = app.add_subcommand("converge", "convergence study against a fine reference");
  converge->add_option("config", path, "config file")->required();
  converge->add_option("--mode", mode, "temporal, spatial or coupled")
      ->check(CLI::IsMember({"temporal", "spatial", "coupled"}));

  double T_long = -1.0;
  auto* conserve = app.add_subcommand("conserve", "long-time mass and energy drift at tau and tau/2");
  conserve->add_option("config", path, "config file")->required();
  conserve->add_option("--T", T_long, "final time (default: T_long from the config)");

  auto* bench = app.add_subcommand("benchmark", "benchmark soliton run");
  bench->add_option("config", path, "config file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : cli::config_error;
  }

  return cli::guarded([&] {
    RunConfig c = load_config(path);
    if (paper_scale) apply_paper_scale(c);
    if (!out_dir.empty()) c.output_dir = out_dir;
    if (*run) return cli::cmd_run(c);
    if (*converge) return cli::cmd_converge(c, parse_sweep_kind(mode));
    if (*conserve) return cli::cmd_conserve(c, T_long > 0 ? T_long : c.T_long);
    return cli::cmd_benchmark(c);
  });
}
