#ifndef CLAB_MODELS_HPP
#define CLAB_MODELS_HPP

#include <optional>
#include <string>
#include <vector>

#include "clab/fourier.hpp"

namespace clab {

enum class BundleKind { WarpedTorus, HeisenbergBundle, FormTorus };
enum class FiberSpin { Projectable, Nonprojectable };

// A collapsing circle-bundle family. The circle action is parametrized with
// period one, so l := |K| equals the fiber length: l = eps * c(s) for the
// warped models and l = eps / quotient_order for the Heisenberg bundle.
// b is the invariant curvature coefficient l*F on the unit base frame.
struct BundleModel {
  BundleKind kind = BundleKind::WarpedTorus;
  std::string id = "model";
  double epsilon = 1.0;
  FourierSeries warping = FourierSeries::constant(1.0);  // c(s) > 0
  std::optional<FourierSeries> warping_exponent;         // g with c = exp(g), when known
  double b = 0.0;
  FiberSpin fiber_spin = FiberSpin::Projectable;
  std::vector<double> base_spin = {0.0};  // offset per base circle direction
  int quotient_order = 1;

  int base_dim() const { return kind == BundleKind::HeisenbergBundle ? 2 : 1; }
  double fiber_length_at(double s) const;
  double fiber_length_sup() const;

  BundleModel with_epsilon(double eps) const;
};

std::string kind_name(BundleKind kind);

// Throws std::invalid_argument on an inconsistent model (nonpositive
// warping, bad offsets, eps <= 0, quotient < 1).
void validate(const BundleModel& model);

// The Heisenberg coefficient describes an honest bundle only when
// b * Area / (2 pi l) is an integer; violations are reported here as
// warnings, never as errors.
std::vector<std::string> integrality_warnings(const BundleModel& model);

// O'Neill tensors of the bundle from the closed-form identities
// T(e0,e0) = -(1/l) grad l and A(e_i,e_j) = -(l/2) F(e_i,e_j) e0.
// sup_t is the grid supremum of |T(e0,e0)|, sup_a of the full
// horizontal-horizontal A norm sqrt(sum_{i,j} |A(e_i,e_j)|^2).
struct TensorReport {
  double sup_a = 0.0;
  double sup_t = 0.0;
  FourierSeries warping;
  FourierSeries warping_derivative;
  double a_component = 0.0;  // |A(e_1,e_2)| = |b|/2, constant on Heisenberg

  double t_e0e0_norm(double s) const;
  double t_e0ei_norm(double s) const;
  double a_eiej_norm() const { return a_component; }
  double a_eie0_norm() const { return a_component; }
};

inline constexpr int kTensorGrid = 1024;

TensorReport submersion_tensors(const BundleModel& model);

// The base two-form coefficient with f* F_base = l F: zero on a
// one-dimensional base, b on the Heisenberg bundle for every quotient.
double curvature_mean(const BundleModel& model);

// Passes to the order-q cyclic quotient: fiber length divided by q,
// curvature multiplied by q, l*F invariant. Heisenberg only.
BundleModel quotient(const BundleModel& model, int q);

// Fiber-mode index set: integers for projectable spin structures,
// half-integers for nonprojectable ones.
ModeLattice mode_lattice(const BundleModel& model, int cutoff = kMaxModes);

}  // namespace clab

#endif
