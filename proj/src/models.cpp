#include "clab/models.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace clab {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

}  // namespace

double BundleModel::fiber_length_at(double s) const {
  if (kind == BundleKind::HeisenbergBundle) return epsilon / quotient_order;
  return epsilon * warping.eval_real(s);
}

double BundleModel::fiber_length_sup() const {
  if (kind == BundleKind::HeisenbergBundle) return epsilon / quotient_order;
  double sup = 0.0;
  for (int i = 0; i < kTensorGrid; ++i)
    sup = std::max(sup, fiber_length_at(kTwoPi * i / kTensorGrid));
  return sup;
}

BundleModel BundleModel::with_epsilon(double eps) const {
  BundleModel m = *this;
  m.epsilon = eps;
  return m;
}

std::string kind_name(BundleKind kind) {
  switch (kind) {
    case BundleKind::WarpedTorus:
      return "warped_torus";
    case BundleKind::HeisenbergBundle:
      return "heisenberg";
    default:
      return "form_torus";
  }
}

void validate(const BundleModel& model) {
  if (!(model.epsilon > 0.0))
    throw std::invalid_argument("model: collapse parameter must be positive");
  if (model.quotient_order < 1)
    throw std::invalid_argument("model: quotient order must be >= 1");
  if (static_cast<int>(model.base_spin.size()) != model.base_dim())
    throw std::invalid_argument("model: one base spin offset per base direction required");
  for (double off : model.base_spin)
    if (off != 0.0 && off != 0.5)
      throw std::invalid_argument("model: base spin offsets must be 0 or 1/2");
  if (model.kind != BundleKind::HeisenbergBundle) {
    if (model.warping.min_real(kTensorGrid) <= 0.0)
      throw std::invalid_argument("model: warping function must be positive");
    if (model.warping.real_symmetry_defect() > 1e-12)
      throw std::invalid_argument("model: warping function must be real");
  }
}

std::vector<std::string> integrality_warnings(const BundleModel& model) {
  std::vector<std::string> warnings;
  if (model.kind != BundleKind::HeisenbergBundle || model.b == 0.0) return warnings;
  // Chern integrality: b * Area / (2 pi l) with Area = (2 pi)^2.
  const double l = model.fiber_length_sup();
  const double chern = model.b * kTwoPi * kTwoPi / (kTwoPi * l);
  if (std::abs(chern - std::round(chern)) > 1e-9)
    warnings.push_back("heisenberg coefficient b=" + std::to_string(model.b) +
                       " gives non-integral bundle class " + std::to_string(chern) +
                       "; spectra remain well defined");
  return warnings;
}

double TensorReport::t_e0e0_norm(double s) const {
  const double c = warping.eval_real(s);
  if (c == 0.0) return 0.0;
  return std::abs(warping_derivative.eval_real(s) / c);
}

double TensorReport::t_e0ei_norm(double s) const { return t_e0e0_norm(s); }

TensorReport submersion_tensors(const BundleModel& model) {
  validate(model);
  TensorReport report;
  if (model.kind == BundleKind::HeisenbergBundle) {
    // Totally geodesic fibers; the only nonzero A components carry l*F = b.
    report.a_component = std::abs(model.b) / 2.0;
    report.sup_a = std::sqrt(2.0) * report.a_component;
    report.sup_t = 0.0;
    return report;
  }
  report.warping = model.warping;
  report.warping_derivative = derivative(model.warping);
  double sup = 0.0;
  for (int i = 0; i < kTensorGrid; ++i)
    sup = std::max(sup, report.t_e0e0_norm(kTwoPi * i / kTensorGrid));
  report.sup_t = sup;
  report.sup_a = 0.0;
  return report;
}

double curvature_mean(const BundleModel& model) {
  return model.kind == BundleKind::HeisenbergBundle ? model.b : 0.0;
}

BundleModel quotient(const BundleModel& model, int q) {
  if (model.kind != BundleKind::HeisenbergBundle)
    throw std::invalid_argument("quotient: only Heisenberg bundles carry the cyclic quotient");
  if (q < 1) throw std::invalid_argument("quotient: order must be >= 1");
  BundleModel out = model;
  out.quotient_order = model.quotient_order * q;
  return out;
}

ModeLattice mode_lattice(const BundleModel& model, int cutoff) {
  const double offset = model.fiber_spin == FiberSpin::Projectable ? 0.0 : 0.5;
  return ModeLattice(offset, cutoff);
}

}  // namespace clab
