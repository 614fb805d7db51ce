#ifndef CLAB_CONFIG_HPP
#define CLAB_CONFIG_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "clab/models.hpp"
#include "clab/potentials.hpp"

namespace clab {

struct config_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct OutputSpec {
  std::string dir = ".";
  std::string spectra_csv = "spectra.csv";
  std::string sweep_csv = "sweep.csv";
  std::string sweep_summary_csv = "sweep_summary.csv";
  std::string bounds_csv = "bounds.csv";
  std::string bounds_json = "bounds.json";
  std::string form_compare_csv = "form_compare.csv";
  std::string limit_csv = "limit_spectrum.csv";
  bool dump_operators = false;
  int matched_count = 20;
};

struct ExperimentConfig {
  BundleModel model;
  std::vector<double> modes;
  bool modes_auto = false;
  std::vector<int> cutoffs = {24};
  std::vector<double> epsilons;
  std::vector<int> quotient_orders;
  std::optional<PotentialSpec> potential;
  std::optional<double> lambda_override;  // explicit bound input for audits
  OutputSpec outputs;
  std::uint64_t seed = 1;

  std::string canonical;   // canonical serialized form
  std::uint64_t hash = 0;  // FNV-1a of canonical
  std::string hash_hex() const;
};

FourierSeries series_from_json(const nlohmann::json& j);
nlohmann::json series_to_json(const FourierSeries& f);

PotentialSpec potential_from_json(const nlohmann::json& j);
nlohmann::json potential_to_json(const PotentialSpec& z);

ExperimentConfig parse_config(const nlohmann::json& j);
ExperimentConfig load_config(const std::string& path);
nlohmann::json config_to_json(const ExperimentConfig& config);

// Fiber modes audited or swept when the config says "auto": the two smallest
// positive lattice values with both signs, plus 0 on projectable lattices
// when include_zero is set.
std::vector<double> auto_modes(const BundleModel& model, bool include_zero);

std::uint64_t fnv1a64(const std::string& text);

}  // namespace clab

#endif
