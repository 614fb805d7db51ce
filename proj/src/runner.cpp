#include "clab/runner.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include <omp.h>

#include <json.hpp>

#include "clab/bounds.hpp"
#include "clab/log.hpp"
#include "clab/operators.hpp"
#include "clab/validate.hpp"

namespace clab {

namespace {

struct ParamPoint {
  bool is_quotient = false;
  double value = 1.0;

  std::string name() const { return is_quotient ? "quotient" : "epsilon"; }
};

BundleModel materialize(const BundleModel& base, const ParamPoint& p) {
  if (p.is_quotient) return quotient(base, static_cast<int>(p.value));
  return base.with_epsilon(p.value);
}

std::vector<ParamPoint> sweep_points(const ExperimentConfig& cfg) {
  std::vector<ParamPoint> pts;
  if (cfg.model.kind == BundleKind::HeisenbergBundle && !cfg.quotient_orders.empty()) {
    for (int q : cfg.quotient_orders) pts.push_back({true, static_cast<double>(q)});
  } else {
    for (double e : cfg.epsilons) pts.push_back({false, e});
  }
  return pts;
}

int resolve_jobs(const CliOptions& opts) {
  return opts.jobs > 0 ? opts.jobs : omp_get_max_threads();
}

// Runs fn(i) for every task index on the worker pool; exceptions are
// captured per task and rethrown in task order after the region.
template <typename Fn>
void run_parallel(int count, int jobs, Fn&& fn) {
  std::vector<std::string> errors(count);
#pragma omp parallel for schedule(dynamic) num_threads(jobs)
  for (int i = 0; i < count; ++i) {
    try {
      fn(i);
    } catch (const std::exception& e) {
      errors[i] = e.what();
    } catch (...) {
      errors[i] = "unknown failure";
    }
  }
  for (const auto& err : errors)
    if (!err.empty()) throw solver_error(err);
}

ModeOperator build_operator(const BundleModel& model, double k, int cutoff,
                            const PotentialSpec* potential) {
  ModeOperator op;
  switch (model.kind) {
    case BundleKind::WarpedTorus:
      op = mode_operator(model, k, cutoff);
      break;
    case BundleKind::HeisenbergBundle:
      op = heisenberg_v0_operator(model, cutoff);
      break;
    default:
      op = form_mode_operator(model, false, cutoff);
      break;
  }
  if (potential != nullptr && model.kind != BundleKind::FormTorus)
    op = add_potential(op, assemble_v0_plain(*potential, model, cutoff));
  return op;
}

std::vector<double> resolved_modes(const ExperimentConfig& cfg, bool include_zero) {
  if (cfg.modes_auto) return auto_modes(cfg.model, include_zero);
  return cfg.modes;
}

double fit_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const int n = static_cast<int>(x.size());
  double mx = 0.0, my = 0.0;
  for (int i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double num = 0.0, den = 0.0;
  for (int i = 0; i < n; ++i) {
    num += (x[i] - mx) * (y[i] - my);
    den += (x[i] - mx) * (x[i] - mx);
  }
  return den == 0.0 ? 0.0 : num / den;
}

std::string form_reference_table(const ExperimentConfig& cfg, const BundleModel& model,
                                 int cutoff, const Spectrum& spec) {
  // Exponent coefficients a_k of c = exp(sum a_k cos(ks)).
  FourierSeries g = model.warping_exponent ? *model.warping_exponent
                                           : log_series(model.warping, 1e-11);
  std::ostringstream os;
  std::vector<double> positive;
  for (double v : spec.values)
    if (v > 1e-9) positive.push_back(v);
  for (int k = 1; k <= 10; ++k) {
    const int idx = 2 * (k - 1);  // the positive branch comes in +/- mode pairs
    if (idx >= static_cast<int>(positive.size())) break;
    const double computed = positive[idx];
    const double ak = 2.0 * g.coeff(k).real();
    const double radicand = 1.0 + 0.5 * ak;
    const double reference = radicand >= 0.0 ? k * std::sqrt(radicand)
                                             : std::numeric_limits<double>::quiet_NaN();
    os << cfg.hash_hex() << ',' << model.id << ',' << cutoff << ',' << k << ','
       << fmt_double(computed) << ',' << fmt_double(reference) << ','
       << fmt_double(std::abs(computed - reference)) << ','
       << fmt_double(std::abs(computed - reference) / std::abs(reference)) << '\n';
  }
  return os.str();
}

}  // namespace

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

const std::string* ReportBundle::find(const std::string& name) const {
  for (const auto& [file, content] : files)
    if (file == name) return &content;
  return nullptr;
}

ReportBundle run_spectrum(const ExperimentConfig& cfg, const CliOptions& opts) {
  const std::vector<ParamPoint> params = sweep_points(cfg);
  const bool zero_only = cfg.model.kind != BundleKind::WarpedTorus;
  std::vector<double> modes = resolved_modes(cfg, true);
  if (zero_only) modes = {0.0};
  if (cfg.model.kind == BundleKind::HeisenbergBundle && !cfg.modes_auto)
    for (double k : cfg.modes)
      if (k != 0.0)
        throw config_error(
            "fiber modes k != 0 are not assembled on the heisenberg base; only the bound covers them");
  if (cfg.model.kind == BundleKind::FormTorus && cfg.potential)
    throw config_error("potentials are not defined for the form model");

  struct Task {
    int cutoff;
    ParamPoint param;
    double k;
  };
  std::vector<Task> tasks;
  for (int cutoff : cfg.cutoffs)
    for (const auto& p : params)
      for (double k : modes) tasks.push_back({cutoff, p, k});

  const PotentialSpec* pot = cfg.potential ? &*cfg.potential : nullptr;
  std::vector<Spectrum> spectra(tasks.size());
  std::vector<std::string> op_dumps(tasks.size());
  run_parallel(static_cast<int>(tasks.size()), resolve_jobs(opts), [&](int i) {
    const BundleModel m = materialize(cfg.model, tasks[i].param);
    const ModeOperator op = build_operator(m, tasks[i].k, tasks[i].cutoff, pot);
    spectra[i] = operator_spectrum(op);
    if (cfg.outputs.dump_operators) op_dumps[i] = operator_to_json(op);
  });

  ReportBundle bundle;
  std::ostringstream csv;
  csv << "config_hash,model_id,k,j,eigenvalue,cutoff,window\n";
  for (size_t i = 0; i < tasks.size(); ++i) {
    const Spectrum& s = spectra[i];
    for (size_t j = 0; j < s.values.size(); ++j)
      csv << cfg.hash_hex() << ',' << cfg.model.id << ',' << fmt_double(tasks[i].k) << ',' << j
          << ',' << fmt_double(s.values[j]) << ',' << tasks[i].cutoff << ','
          << fmt_double(s.window) << '\n';
  }
  bundle.files.emplace_back(cfg.outputs.spectra_csv, csv.str());

  if (cfg.model.kind == BundleKind::FormTorus) {
    std::ostringstream form;
    form << "config_hash,model_id,cutoff,k,computed,reference,abs_err,rel_err\n";
    for (size_t i = 0; i < tasks.size(); ++i)
      form << form_reference_table(cfg, materialize(cfg.model, tasks[i].param), tasks[i].cutoff,
                                   spectra[i]);
    bundle.files.emplace_back(cfg.outputs.form_compare_csv, form.str());
  }
  if (cfg.outputs.dump_operators) {
    for (size_t i = 0; i < tasks.size(); ++i) {
      std::ostringstream name;
      name << "operator_" << cfg.model.id << '_' << tasks[i].param.name() << tasks[i].param.value
           << "_k" << tasks[i].k << "_c" << tasks[i].cutoff << ".json";
      bundle.files.emplace_back(name.str(), op_dumps[i]);
    }
  }
  return bundle;
}

ReportBundle run_collapse_sweep(const ExperimentConfig& cfg, const CliOptions& opts,
                                bool limit_columns) {
  const std::vector<ParamPoint> params = sweep_points(cfg);
  if (params.size() < 3) throw config_error("collapse sweep needs at least 3 sweep points");
  if (cfg.model.kind == BundleKind::HeisenbergBundle && cfg.quotient_orders.empty())
    throw config_error("heisenberg sweeps run over quotient_orders");

  const PotentialSpec* pot = cfg.potential ? &*cfg.potential : nullptr;
  std::vector<double> modes = resolved_modes(cfg, true);
  if (cfg.model.kind != BundleKind::WarpedTorus) modes = {0.0};
  const int matched = cfg.outputs.matched_count;

  struct Task {
    int cutoff;
    ParamPoint param;
    double k;
  };
  std::vector<Task> tasks;
  for (int cutoff : cfg.cutoffs)
    for (const auto& p : params)
      for (double k : modes) tasks.push_back({cutoff, p, k});

  // Limit spectra per cutoff (they carry no collapse parameter).
  std::vector<Spectrum> limits(cfg.cutoffs.size());
  for (size_t ci = 0; ci < cfg.cutoffs.size(); ++ci) {
    const BundleModel m = materialize(cfg.model, params.front());
    if (cfg.model.kind == BundleKind::FormTorus) {
      limits[ci] = operator_spectrum(form_mode_operator(m, true, cfg.cutoffs[ci]));
    } else {
      Eigen::MatrixXcd zres;
      const Eigen::MatrixXcd* zptr = nullptr;
      if (pot != nullptr) {
        zres = restrict_v0(average(*pot), m, cfg.cutoffs[ci]);
        zptr = &zres;
      }
      limits[ci] = operator_spectrum(limit_operator(m, zptr, cfg.cutoffs[ci]));
    }
  }
  auto limit_for = [&](int cutoff) -> const Spectrum& {
    for (size_t ci = 0; ci < cfg.cutoffs.size(); ++ci)
      if (cfg.cutoffs[ci] == cutoff) return limits[ci];
    throw solver_error("collapse sweep: missing limit spectrum");
  };

  std::vector<Spectrum> spectra(tasks.size());
  run_parallel(static_cast<int>(tasks.size()), resolve_jobs(opts), [&](int i) {
    const BundleModel m = materialize(cfg.model, tasks[i].param);
    spectra[i] = operator_spectrum(build_operator(m, tasks[i].k, tasks[i].cutoff, pot));
  });

  ReportBundle bundle;
  std::ostringstream csv;
  csv << "config_hash,model_id,cutoff,param,value,k,min_abs_eig,dist_to_limit,matched_count\n";
  for (size_t i = 0; i < tasks.size(); ++i) {
    double dist = std::numeric_limits<double>::quiet_NaN();
    if (tasks[i].k == 0.0)
      dist = matched_distance(spectra[i], limit_for(tasks[i].cutoff), matched);
    csv << cfg.hash_hex() << ',' << cfg.model.id << ',' << tasks[i].cutoff << ','
        << tasks[i].param.name() << ',' << fmt_double(tasks[i].param.value) << ','
        << fmt_double(tasks[i].k) << ',' << fmt_double(spectra[i].min_abs()) << ','
        << fmt_double(dist) << ',' << matched << '\n';
  }
  bundle.files.emplace_back(cfg.outputs.sweep_csv, csv.str());

  // Log-log slope estimates over the sweep parameter.
  std::ostringstream summary;
  summary << "config_hash,model_id,cutoff,k,quantity,value\n";
  for (int cutoff : cfg.cutoffs) {
    for (double k : modes) {
      std::vector<double> xs, ys_min, ys_dist;
      for (size_t i = 0; i < tasks.size(); ++i) {
        if (tasks[i].cutoff != cutoff || tasks[i].k != k) continue;
        xs.push_back(std::log(tasks[i].param.value));
        ys_min.push_back(std::log(std::max(spectra[i].min_abs(), 1e-300)));
        if (k == 0.0)
          ys_dist.push_back(std::log(
              std::max(matched_distance(spectra[i], limit_for(cutoff), matched), 1e-300)));
      }
      if (xs.size() < 2) continue;
      if (k == 0.0) {
        summary << cfg.hash_hex() << ',' << cfg.model.id << ',' << cutoff << ',' << fmt_double(k)
                << ",dist_to_limit_slope," << fmt_double(fit_slope(xs, ys_dist)) << '\n';
      } else {
        summary << cfg.hash_hex() << ',' << cfg.model.id << ',' << cutoff << ',' << fmt_double(k)
                << ",min_abs_eig_slope," << fmt_double(fit_slope(xs, ys_min)) << '\n';
      }
    }
    if (cfg.model.kind == BundleKind::HeisenbergBundle) {
      // Quotient invariance: worst matched distance against the first order.
      double worst = 0.0;
      const Spectrum* first = nullptr;
      for (size_t i = 0; i < tasks.size(); ++i) {
        if (tasks[i].cutoff != cutoff) continue;
        if (first == nullptr) {
          first = &spectra[i];
        } else {
          worst = std::max(worst, matched_distance(spectra[i], *first,
                                                   std::min(matched, 30)));
        }
      }
      summary << cfg.hash_hex() << ',' << cfg.model.id << ',' << cutoff
              << ",0,max_cross_quotient_distance," << fmt_double(worst) << '\n';
      // Scalar curvature shift under the period-1 fiber convention, and the
      // candidate value under period-2pi bookkeeping of the fiber length.
      const double shift = limit_scalar_shift(materialize(cfg.model, params.front()));
      summary << cfg.hash_hex() << ',' << cfg.model.id << ',' << cutoff
              << ",0,limit_scalar_shift," << fmt_double(shift) << '\n';
      summary << cfg.hash_hex() << ',' << cfg.model.id << ',' << cutoff
              << ",0,limit_scalar_shift_period2pi,"
              << fmt_double(shift / (2.0 * std::numbers::pi)) << '\n';
    }
  }
  bundle.files.emplace_back(cfg.outputs.sweep_summary_csv, summary.str());

  if (limit_columns) {
    std::ostringstream lim;
    lim << "config_hash,model_id,cutoff,j,eigenvalue,window\n";
    for (size_t ci = 0; ci < cfg.cutoffs.size(); ++ci)
      for (size_t j = 0; j < limits[ci].values.size(); ++j)
        lim << cfg.hash_hex() << ',' << cfg.model.id << ',' << cfg.cutoffs[ci] << ',' << j << ','
            << fmt_double(limits[ci].values[j]) << ',' << fmt_double(limits[ci].window) << '\n';
    bundle.files.emplace_back(cfg.outputs.limit_csv, lim.str());
  }
  return bundle;
}

std::pair<ReportBundle, bool> run_bounds_audit(const ExperimentConfig& cfg,
                                               const CliOptions& opts) {
  if (cfg.model.kind != BundleKind::WarpedTorus)
    throw config_error("bounds audit assembles warped-torus mode operators only");
  std::vector<double> ks = resolved_modes(cfg, false);
  ks.erase(std::remove(ks.begin(), ks.end(), 0.0), ks.end());
  if (ks.empty()) throw config_error("bounds audit needs nonzero fiber modes");
  const std::vector<ParamPoint> params = sweep_points(cfg);
  const PotentialSpec* pot = cfg.potential ? &*cfg.potential : nullptr;
  const double fallback_lambda = cfg.lambda_override.value_or(0.0);

  struct Task {
    int cutoff;
    ParamPoint param;
  };
  std::vector<Task> tasks;
  for (int cutoff : cfg.cutoffs)
    for (const auto& p : params) tasks.push_back({cutoff, p});

  std::vector<BoundsReport> reports(tasks.size());
  run_parallel(static_cast<int>(tasks.size()), resolve_jobs(opts), [&](int i) {
    const BundleModel m = materialize(cfg.model, tasks[i].param);
    reports[i] = audit(m, ks, tasks[i].cutoff, pot, fallback_lambda);
  });

  ReportBundle bundle;
  bool all_pass = true;
  std::ostringstream csv;
  csv << "config_hash,model_id,cutoff,param,value,k,bound,observed,pass,converged\n";
  nlohmann::json jreports = nlohmann::json::array();
  for (size_t i = 0; i < tasks.size(); ++i) {
    for (const auto& row : reports[i].per_mode) {
      all_pass = all_pass && row.pass;
      csv << cfg.hash_hex() << ',' << cfg.model.id << ',' << tasks[i].cutoff << ','
          << tasks[i].param.name() << ',' << fmt_double(tasks[i].param.value) << ','
          << fmt_double(row.k) << ',' << fmt_double(row.lower_bound) << ','
          << fmt_double(row.observed_min_abs) << ',' << (row.pass ? 1 : 0) << ','
          << (row.converged ? 1 : 0) << '\n';
    }
    jreports.push_back(nlohmann::json::parse(bounds_report_json(reports[i])));
  }
  bundle.files.emplace_back(cfg.outputs.bounds_csv, csv.str());
  bundle.files.emplace_back(cfg.outputs.bounds_json,
                            nlohmann::json{{"reports", std::move(jreports)}}.dump(2));
  return {bundle, all_pass};
}

void write_bundle(const ReportBundle& bundle, const std::string& dir) {
  std::filesystem::create_directories(dir);
  for (const auto& [name, content] : bundle.files) {
    const std::filesystem::path path = std::filesystem::path(dir) / name;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << content;
  }
}

namespace {

std::string output_dir(const ExperimentConfig& cfg, const CliOptions& opts) {
  return opts.out_dir.empty() ? cfg.outputs.dir : opts.out_dir;
}

}  // namespace

int cmd_spectrum(const ExperimentConfig& cfg, const CliOptions& opts) {
  const ReportBundle bundle = run_spectrum(cfg, opts);
  write_bundle(bundle, output_dir(cfg, opts));
  log_info("spectrum: wrote " + std::to_string(bundle.files.size()) + " report file(s)");
  return 0;
}

int cmd_collapse_sweep(const ExperimentConfig& cfg, const CliOptions& opts, bool limit_columns) {
  const ReportBundle bundle = run_collapse_sweep(cfg, opts, limit_columns);
  write_bundle(bundle, output_dir(cfg, opts));
  log_info("collapse-sweep: wrote " + std::to_string(bundle.files.size()) + " report file(s)");
  return 0;
}

int cmd_bounds_audit(const ExperimentConfig& cfg, const CliOptions& opts) {
  const auto [bundle, all_pass] = run_bounds_audit(cfg, opts);
  write_bundle(bundle, output_dir(cfg, opts));
  log_info(std::string("bounds-audit: ") + (all_pass ? "all modes pass" : "BOUND VIOLATION"));
  return all_pass ? 0 : 4;
}

int cmd_validate(std::ostream& out) {
  const ValidationSummary summary = run_validation(out);
  return summary.failed == 0 ? 0 : 5;
}

}  // namespace clab
