#include "clab/bounds.hpp"

#include <cmath>

#include <json.hpp>

#include "clab/operators.hpp"

namespace clab {

double divergence_bound(double k, double l, double c_a, double lambda, int n, double eps) {
  if (!(l > 0.0)) throw std::invalid_argument("divergence_bound: fiber length must be positive");
  if (!std::isfinite(k) || !std::isfinite(c_a) || !std::isfinite(lambda) || !std::isfinite(eps))
    throw std::invalid_argument("divergence_bound: inputs must be finite");
  const double inner = std::abs(k) / l - mh_norm_bound(n, c_a) - eps;
  return std::sinh(std::asinh(inner) - eps) - lambda;
}

double mh_norm_bound(int n, double c_a) {
  if (n < 1) throw std::invalid_argument("mh_norm_bound: base dimension must be >= 1");
  return 0.5 * std::sqrt(static_cast<double>(n / 2)) * c_a;
}

KatoResult kato_check(const Spectrum& base, const Spectrum& perturbed, double lambda,
                      double radius) {
  if (base.window < radius + lambda || perturbed.window < radius + lambda)
    throw std::invalid_argument("kato_check: spectra not reliable on the padded window");
  KatoResult result;
  result.max_distance = one_sided_distance(perturbed, base, radius);
  result.margin = lambda - result.max_distance;
  result.pass = result.max_distance <= lambda + 1e-9;
  return result;
}

BoundsReport audit(const BundleModel& model, const std::vector<double>& ks, int cutoff,
                   const PotentialSpec* potential, double fallback_lambda) {
  validate(model);
  if (fallback_lambda < 0.0)
    throw std::invalid_argument("audit: bound input lambda must be nonnegative");
  const TensorReport tensors = submersion_tensors(model);
  BoundsReport report;
  report.model_id = model.id;
  report.c_a = tensors.sup_a;
  report.c_t = tensors.sup_t;
  report.fiber_length = model.fiber_length_sup();
  report.warnings = integrality_warnings(model);
  report.lambda = fallback_lambda;

  Eigen::MatrixXcd zblock;
  if (potential != nullptr) {
    validate(*potential);
    report.lambda = norms(*potential, model).first;
    zblock = assemble_v0_plain(*potential, model, cutoff);
  }

  const ModeLattice fiber = mode_lattice(model);
  double worst_kato_margin = std::numeric_limits<double>::infinity();
  for (double k : ks) {
    if (!fiber.contains(k))
      throw std::invalid_argument("audit: mode k not in the model's fiber lattice");
    if (k == 0.0) continue;  // the bound concerns diverging modes only
    const ModeOperator op = mode_operator(model, k, cutoff);
    const Spectrum base_spec = operator_spectrum(op);

    BoundsRow row;
    row.k = k;
    row.lower_bound =
        divergence_bound(k, report.fiber_length, report.c_a, report.lambda, model.base_dim(), 0.0);
    // Convergence probe: the reliable window does not certify values this far
    // out, so check stability of min |lambda| under doubling the cutoff.
    const Spectrum refined =
        operator_spectrum(mode_operator(model, k, std::min(2 * cutoff, kMaxModes)));
    row.converged = std::abs(base_spec.min_abs() - refined.min_abs()) <= 1e-9;

    Spectrum audited = base_spec;
    if (potential != nullptr) {
      audited = operator_spectrum(add_potential(op, zblock));
      const double radius = std::max(op.reliable_radius - report.lambda, report.lambda + 1.0);
      Spectrum wide_base = base_spec, wide_pert = audited;
      wide_base.window = radius + report.lambda;
      wide_pert.window = radius + report.lambda;
      if (!wide_pert.in_window(radius).empty()) {
        const KatoResult kato = kato_check(wide_base, wide_pert, report.lambda, radius);
        worst_kato_margin = std::min(worst_kato_margin, kato.margin);
      }
    }
    row.observed_min_abs = audited.min_abs();
    row.pass = row.observed_min_abs >= row.lower_bound - 1e-9;
    report.per_mode.push_back(row);
  }
  if (potential != nullptr && std::isfinite(worst_kato_margin))
    report.kato_margin = worst_kato_margin;
  return report;
}

bool BoundsReport::all_pass() const {
  for (const auto& row : per_mode)
    if (!row.pass) return false;
  return true;
}

std::string bounds_report_json(const BoundsReport& report) {
  nlohmann::json j;
  j["model_id"] = report.model_id;
  j["c_a"] = report.c_a;
  j["c_t"] = report.c_t;
  j["lambda"] = report.lambda;
  j["fiber_length_sup"] = report.fiber_length;
  // Invariant metrics make the metric-smoothing control exact: C(a) = 0.
  j["metric_smoothing_constant"] = 0.0;
  if (report.kato_margin) j["kato_margin"] = *report.kato_margin;
  j["warnings"] = report.warnings;
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : report.per_mode)
    rows.push_back({{"k", row.k},
                    {"bound", row.lower_bound},
                    {"observed", row.observed_min_abs},
                    {"pass", row.pass},
                    {"converged", row.converged}});
  j["per_mode"] = std::move(rows);
  return j.dump(2);
}

}  // namespace clab
