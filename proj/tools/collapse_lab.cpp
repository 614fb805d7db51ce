#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "clab/config.hpp"
#include "clab/eigensolve.hpp"
#include "clab/log.hpp"
#include "clab/runner.hpp"

namespace {

struct CommonArgs {
  std::string config_path;
  std::string out_dir;
  int jobs = 0;
  std::int64_t seed = -1;
};

void add_common(CLI::App* cmd, CommonArgs& args, bool needs_config) {
  if (needs_config)
    cmd->add_option("--config", args.config_path, "experiment config (JSON)")->required();
  cmd->add_option("--out", args.out_dir, "output directory (overrides the config)");
  cmd->add_option("--jobs", args.jobs, "worker count, default: logical cores");
  cmd->add_option("--seed", args.seed, "seed override for randomized potential tests");
}

clab::CliOptions to_options(const CommonArgs& args) {
  clab::CliOptions opts;
  opts.out_dir = args.out_dir;
  opts.jobs = args.jobs;
  if (args.seed >= 0) opts.seed = static_cast<std::uint64_t>(args.seed);
  return opts;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"collapse-lab: spectra of collapsing circle-bundle Dirac operators"};
  app.require_subcommand(1);

  CommonArgs spectrum_args, sweep_args, limit_args, bounds_args;
  CLI::App* spectrum = app.add_subcommand("spectrum", "eigenvalues per (k, cutoff) as CSV");
  add_common(spectrum, spectrum_args, true);
  CLI::App* sweep = app.add_subcommand("collapse-sweep", "convergence table over a sweep");
  add_common(sweep, sweep_args, true);
  CLI::App* limit =
      app.add_subcommand("limit-compare", "collapse-sweep plus the limit spectrum table");
  add_common(limit, limit_args, true);
  CLI::App* bounds = app.add_subcommand("bounds-audit", "divergence-bound audit per mode");
  add_common(bounds, bounds_args, true);
  app.add_subcommand("validate", "run the built-in oracle suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (spectrum->parsed()) {
      auto cfg = clab::load_config(spectrum_args.config_path);
      if (auto s = to_options(spectrum_args).seed) cfg.seed = *s;
      return clab::cmd_spectrum(cfg, to_options(spectrum_args));
    }
    if (sweep->parsed()) {
      auto cfg = clab::load_config(sweep_args.config_path);
      if (auto s = to_options(sweep_args).seed) cfg.seed = *s;
      return clab::cmd_collapse_sweep(cfg, to_options(sweep_args), false);
    }
    if (limit->parsed()) {
      auto cfg = clab::load_config(limit_args.config_path);
      if (auto s = to_options(limit_args).seed) cfg.seed = *s;
      return clab::cmd_collapse_sweep(cfg, to_options(limit_args), true);
    }
    if (bounds->parsed()) {
      auto cfg = clab::load_config(bounds_args.config_path);
      if (auto s = to_options(bounds_args).seed) cfg.seed = *s;
      return clab::cmd_bounds_audit(cfg, to_options(bounds_args));
    }
    return clab::cmd_validate(std::cout);
  } catch (const clab::config_error& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const clab::solver_error& e) {
    std::cerr << "solver error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
}
