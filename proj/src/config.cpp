#include "clab/config.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace clab {

namespace {

using nlohmann::json;

cxd cxd_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2)
    throw config_error("complex entries must be [re, im] pairs");
  return {j[0].get<double>(), j[1].get<double>()};
}

Eigen::MatrixXcd matrix_from_json(const json& j) {
  if (!j.is_array() || j.empty()) throw config_error("matrix must be a nonempty array of rows");
  const int rows = static_cast<int>(j.size());
  const int cols = static_cast<int>(j[0].size());
  Eigen::MatrixXcd m(rows, cols);
  for (int r = 0; r < rows; ++r) {
    if (static_cast<int>(j[r].size()) != cols) throw config_error("ragged matrix rows");
    for (int c = 0; c < cols; ++c) m(r, c) = cxd_from_json(j[r][c]);
  }
  return m;
}

json matrix_to_json(const Eigen::MatrixXcd& m) {
  json rows = json::array();
  for (int r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (int c = 0; c < m.cols(); ++c) row.push_back({m(r, c).real(), m(r, c).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

BundleKind kind_from_string(const std::string& s) {
  if (s == "warped_torus") return BundleKind::WarpedTorus;
  if (s == "heisenberg") return BundleKind::HeisenbergBundle;
  if (s == "form_torus") return BundleKind::FormTorus;
  throw config_error("unknown model kind '" + s + "'");
}

BundleModel model_from_json(const json& j) {
  BundleModel m;
  if (!j.contains("kind")) throw config_error("model requires a kind");
  m.kind = kind_from_string(j.at("kind").get<std::string>());
  m.id = j.value("id", kind_name(m.kind));
  m.epsilon = j.value("epsilon", 1.0);
  m.b = j.value("b", 0.0);
  m.quotient_order = j.value("quotient_order", 1);
  if (j.contains("warping") && j.contains("warping_exp"))
    throw config_error("give either warping or warping_exp, not both");
  if (j.contains("warping_exp")) {
    m.warping_exponent = series_from_json(j.at("warping_exp"));
    m.warping = exp_series(*m.warping_exponent, 1e-12);
  } else if (j.contains("warping")) {
    m.warping = series_from_json(j.at("warping"));
  }
  const std::string spin = j.value("fiber_spin", std::string("projectable"));
  if (spin == "projectable") {
    m.fiber_spin = FiberSpin::Projectable;
  } else if (spin == "nonprojectable") {
    m.fiber_spin = FiberSpin::Nonprojectable;
  } else {
    throw config_error("fiber_spin must be projectable or nonprojectable");
  }
  if (j.contains("base_spin")) {
    m.base_spin.clear();
    if (j.at("base_spin").is_array()) {
      for (const auto& v : j.at("base_spin")) m.base_spin.push_back(v.get<double>());
    } else {
      m.base_spin.push_back(j.at("base_spin").get<double>());
    }
  } else {
    m.base_spin.assign(m.base_dim(), 0.0);
  }
  while (static_cast<int>(m.base_spin.size()) < m.base_dim())
    m.base_spin.push_back(m.base_spin.front());
  try {
    validate(m);
  } catch (const std::invalid_argument& e) {
    throw config_error(e.what());
  }
  return m;
}

json model_to_json(const BundleModel& m) {
  json j;
  j["kind"] = kind_name(m.kind);
  j["id"] = m.id;
  j["epsilon"] = m.epsilon;
  if (m.kind == BundleKind::HeisenbergBundle) {
    j["b"] = m.b;
    j["quotient_order"] = m.quotient_order;
  } else if (m.warping_exponent) {
    j["warping_exp"] = series_to_json(*m.warping_exponent);
  } else {
    j["warping"] = series_to_json(m.warping);
  }
  j["fiber_spin"] =
      m.fiber_spin == FiberSpin::Projectable ? "projectable" : "nonprojectable";
  j["base_spin"] = m.base_spin;
  return j;
}

}  // namespace

FourierSeries series_from_json(const json& j) {
  FourierSeries f;
  if (j.contains("const")) f += FourierSeries::constant(j.at("const").get<double>());
  for (const char* key : {"cos", "sin"}) {
    if (!j.contains(key)) continue;
    for (const auto& [mode, amp] : j.at(key).items()) {
      int k = 0;
      try {
        k = std::stoi(mode);
      } catch (...) {
        throw config_error(std::string(key) + " keys must be integer harmonics");
      }
      if (k < 1) throw config_error(std::string(key) + " harmonics must be >= 1");
      const double a = amp.get<double>();
      f += std::string(key) == "cos" ? FourierSeries::harmonic_cos(k, a)
                                     : FourierSeries::harmonic_sin(k, a);
    }
  }
  return f;
}

json series_to_json(const FourierSeries& f) {
  json j;
  json cos_part = json::object(), sin_part = json::object();
  if (std::abs(f.coeff(0)) > 0.0) j["const"] = f.coeff(0).real();
  for (const auto& [m, v] : f.modes()) {
    if (m <= 0) continue;
    const double a = 2.0 * v.real();
    const double b = -2.0 * v.imag();
    if (a != 0.0) cos_part[std::to_string(m)] = a;
    if (b != 0.0) sin_part[std::to_string(m)] = b;
  }
  if (!cos_part.empty()) j["cos"] = std::move(cos_part);
  if (!sin_part.empty()) j["sin"] = std::move(sin_part);
  return j;
}

PotentialSpec potential_from_json(const json& j) {
  PotentialSpec z;
  if (!j.contains("terms") || !j.at("terms").is_array())
    throw config_error("potential requires a terms array");
  for (const auto& t : j.at("terms")) {
    PotentialTerm term;
    term.fiber_mode = t.value("fiber_mode", t.value("j", 0));
    if (t.contains("series")) term.base_s = series_from_json(t.at("series"));
    if (t.contains("series_y")) term.base_y = series_from_json(t.at("series_y"));
    if (t.contains("matrix")) term.matrix_part = matrix_from_json(t.at("matrix"));
    z.terms.push_back(std::move(term));
  }
  try {
    validate(z);
  } catch (const std::invalid_argument& e) {
    throw config_error(e.what());
  }
  return z;
}

json potential_to_json(const PotentialSpec& z) {
  json terms = json::array();
  for (const auto& term : z.terms) {
    json t;
    t["fiber_mode"] = term.fiber_mode;
    t["series"] = series_to_json(term.base_s);
    const json series_y = series_to_json(term.base_y);
    if (!(series_y.size() == 1 && series_y.value("const", 0.0) == 1.0))
      t["series_y"] = series_y;
    t["matrix"] = matrix_to_json(term.matrix_part);
    terms.push_back(std::move(t));
  }
  return json{{"terms", std::move(terms)}};
}

ExperimentConfig parse_config(const json& j) {
  ExperimentConfig cfg;
  if (!j.contains("model")) throw config_error("config requires a model");
  cfg.model = model_from_json(j.at("model"));
  if (j.contains("modes")) {
    if (j.at("modes").is_string()) {
      if (j.at("modes").get<std::string>() != "auto")
        throw config_error("modes must be a list or \"auto\"");
      cfg.modes_auto = true;
    } else {
      for (const auto& v : j.at("modes")) cfg.modes.push_back(v.get<double>());
      const ModeLattice lattice = mode_lattice(cfg.model);
      for (double k : cfg.modes)
        if (!lattice.contains(k)) {
          const char* name = cfg.model.fiber_spin == FiberSpin::Projectable
                                 ? "projectable lattice (integers)"
                                 : "nonprojectable lattice (half-integers)";
          std::ostringstream os;
          os << "mode k=" << k << " is not in the " << name;
          throw config_error(os.str());
        }
    }
  } else {
    cfg.modes_auto = true;
  }
  if (j.contains("cutoffs")) {
    cfg.cutoffs.clear();
    for (const auto& v : j.at("cutoffs")) cfg.cutoffs.push_back(v.get<int>());
  }
  if (cfg.cutoffs.empty()) throw config_error("cutoffs must be nonempty");
  for (int c : cfg.cutoffs)
    if (c < 1 || c > kMaxModes) throw config_error("cutoffs must lie in [1, 512]");
  if (j.contains("epsilons")) {
    for (const auto& v : j.at("epsilons")) cfg.epsilons.push_back(v.get<double>());
    if (cfg.epsilons.empty()) throw config_error("epsilons sweep must be nonempty");
    for (double e : cfg.epsilons)
      if (!(e > 0.0)) throw config_error("epsilons must be positive");
  } else {
    cfg.epsilons = {cfg.model.epsilon};
  }
  if (j.contains("quotient_orders")) {
    for (const auto& v : j.at("quotient_orders")) cfg.quotient_orders.push_back(v.get<int>());
    if (cfg.quotient_orders.empty()) throw config_error("quotient_orders sweep must be nonempty");
    for (int q : cfg.quotient_orders)
      if (q < 1) throw config_error("quotient orders must be >= 1");
  }
  if (j.contains("potential")) cfg.potential = potential_from_json(j.at("potential"));
  if (j.contains("bounds")) {
    if (j.at("bounds").contains("lambda")) {
      const double lambda = j.at("bounds").at("lambda").get<double>();
      if (lambda < 0.0) throw config_error("bound input lambda must be nonnegative");
      cfg.lambda_override = lambda;
    }
  }
  if (j.contains("outputs")) {
    const json& o = j.at("outputs");
    cfg.outputs.dir = o.value("dir", cfg.outputs.dir);
    cfg.outputs.spectra_csv = o.value("spectra", cfg.outputs.spectra_csv);
    cfg.outputs.sweep_csv = o.value("sweep", cfg.outputs.sweep_csv);
    cfg.outputs.sweep_summary_csv = o.value("sweep_summary", cfg.outputs.sweep_summary_csv);
    cfg.outputs.bounds_csv = o.value("bounds", cfg.outputs.bounds_csv);
    cfg.outputs.bounds_json = o.value("bounds_json", cfg.outputs.bounds_json);
    cfg.outputs.form_compare_csv = o.value("form_compare", cfg.outputs.form_compare_csv);
    cfg.outputs.limit_csv = o.value("limit", cfg.outputs.limit_csv);
    cfg.outputs.dump_operators = o.value("dump_operators", cfg.outputs.dump_operators);
    cfg.outputs.matched_count = o.value("matched_count", cfg.outputs.matched_count);
    if (cfg.outputs.matched_count < 1) throw config_error("matched_count must be >= 1");
  }
  cfg.seed = j.value("seed", 1);
  cfg.canonical = config_to_json(cfg).dump();
  cfg.hash = fnv1a64(cfg.canonical);
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw config_error("cannot open config file '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw config_error("config parse failure: " + std::string(e.what()));
  }
  return parse_config(j);
}

json config_to_json(const ExperimentConfig& cfg) {
  json j;
  j["model"] = model_to_json(cfg.model);
  if (cfg.modes_auto) {
    j["modes"] = "auto";
  } else {
    j["modes"] = cfg.modes;
  }
  j["cutoffs"] = cfg.cutoffs;
  j["epsilons"] = cfg.epsilons;
  if (!cfg.quotient_orders.empty()) j["quotient_orders"] = cfg.quotient_orders;
  if (cfg.potential) j["potential"] = potential_to_json(*cfg.potential);
  if (cfg.lambda_override) j["bounds"] = json{{"lambda", *cfg.lambda_override}};
  json o;
  o["dir"] = cfg.outputs.dir;
  o["spectra"] = cfg.outputs.spectra_csv;
  o["sweep"] = cfg.outputs.sweep_csv;
  o["sweep_summary"] = cfg.outputs.sweep_summary_csv;
  o["bounds"] = cfg.outputs.bounds_csv;
  o["bounds_json"] = cfg.outputs.bounds_json;
  o["form_compare"] = cfg.outputs.form_compare_csv;
  o["limit"] = cfg.outputs.limit_csv;
  o["dump_operators"] = cfg.outputs.dump_operators;
  o["matched_count"] = cfg.outputs.matched_count;
  j["outputs"] = std::move(o);
  j["seed"] = cfg.seed;
  return j;
}

std::vector<double> auto_modes(const BundleModel& model, bool include_zero) {
  const ModeLattice lattice = mode_lattice(model);
  const double first = lattice.offset == 0.0 ? 1.0 : 0.5;
  std::vector<double> ks;
  if (include_zero && lattice.offset == 0.0) ks.push_back(0.0);
  for (double k : {first, first + 1.0}) {
    ks.push_back(k);
    ks.push_back(-k);
  }
  std::sort(ks.begin(), ks.end());
  return ks;
}

std::string ExperimentConfig::hash_hex() const {
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << hash;
  return os.str();
}

std::uint64_t fnv1a64(const std::string& text) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace clab
