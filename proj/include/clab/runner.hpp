#ifndef CLAB_RUNNER_HPP
#define CLAB_RUNNER_HPP

#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "clab/config.hpp"

namespace clab {

struct CliOptions {
  std::string out_dir;  // overrides the config output directory when nonempty
  int jobs = 0;         // worker count; <= 0 means all logical cores
  std::optional<std::uint64_t> seed;
};

// Commands produce their reports as ordered (filename, content) pairs so
// repeated runs can be compared byte for byte before anything touches disk.
struct ReportBundle {
  std::vector<std::pair<std::string, std::string>> files;

  const std::string* find(const std::string& name) const;
};

ReportBundle run_spectrum(const ExperimentConfig& cfg, const CliOptions& opts);
ReportBundle run_collapse_sweep(const ExperimentConfig& cfg, const CliOptions& opts,
                                bool limit_columns);
std::pair<ReportBundle, bool> run_bounds_audit(const ExperimentConfig& cfg,
                                               const CliOptions& opts);

void write_bundle(const ReportBundle& bundle, const std::string& dir);

// Exit codes: 0 success, 2 config error, 3 solver failure, 4 bound
// violation, 5 validation failure.
int cmd_spectrum(const ExperimentConfig& cfg, const CliOptions& opts);
int cmd_collapse_sweep(const ExperimentConfig& cfg, const CliOptions& opts, bool limit_columns);
int cmd_bounds_audit(const ExperimentConfig& cfg, const CliOptions& opts);
int cmd_validate(std::ostream& out);

std::string fmt_double(double v);

}  // namespace clab

#endif
