#ifndef CLAB_OPERATORS_HPP
#define CLAB_OPERATORS_HPP

#include <string>

#include <Eigen/Dense>

#include "clab/eigensolve.hpp"
#include "clab/fourier.hpp"
#include "clab/models.hpp"

namespace clab {

// Finite Hermitian Galerkin matrix of a per-mode, limit, or form operator.
// All warped assemblies live in the c^{1/2}-conjugated basis in which the
// weighted inner product becomes the standard one, so the stored matrix is
// Hermitian in the ordinary sense (see docs/mode_operator_derivation.md).
struct ModeOperator {
  Eigen::MatrixXcd matrix;
  double k = 0.0;
  std::string k_tag;  // numeric mode, "limit", "form" or "form_limit"
  std::string basis;
  std::string model_id;
  double reliable_radius = 0.0;
};

Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b);

// Basis bookkeeping shared by the assemblies and the potential module.
// One-dimensional bases use (spinor component) x (Fourier mode); the
// Heisenberg base uses (component) x (mode_x) x (mode_y), row-major in the
// mode pair.
ModeLattice base_lattice(const BundleModel& model, int cutoff);
std::pair<ModeLattice, ModeLattice> base_lattice_2d(const BundleModel& model, int cutoff);

// Warped-torus operator on the fiber mode k in the conjugated basis:
//   gamma(e_1) (x) d/ds + (k/eps) i gamma(e_0) (x) M_{1/c},
// the zeroth-order c'/(2c) term of the weighted form cancels analytically.
ModeOperator mode_operator(const BundleModel& model, double k, int cutoff);

// Limit operator on the base. One-dimensional base: block form with
// +/- the circle Dirac operator on the two nu-eigenspaces (the curvature
// term vanishes). Heisenberg base: flat torus Dirac plus the scalar
// (i/4) omega gamma(F_base) produced by the Clifford module. zblock, when
// given, is added as the restricted potential in the same basis.
ModeOperator limit_operator(const BundleModel& model, const Eigen::MatrixXcd* zblock,
                            int cutoff);

// Invariant-mode operator of the Heisenberg total space assembled through
// the three-dimensional Clifford algebra, D^H - (1/4) gamma(e_0) gamma(lF);
// an assembly path independent of limit_operator. Quotient-order free.
ModeOperator heisenberg_v0_operator(const BundleModel& model, int cutoff);

// Hodge-Dirac operator of the warped torus on invariant (function, ds-form)
// pairs, in the c-weighted orthonormalized basis. Its action is independent
// of eps; `limit` only tags the provenance.
ModeOperator form_mode_operator(const BundleModel& model, bool limit, int cutoff);

ModeOperator add_potential(const ModeOperator& op, const Eigen::MatrixXcd& zblock);

// Scalar shift (i/4) omega gamma(F) of the even-dimensional limit operator;
// returns the signed coefficient s * b/4 under the pinned orientation
// convention (omega_3 = +Id), verifying that the matrix is scalar.
double limit_scalar_shift(const BundleModel& model);

Spectrum operator_spectrum(const ModeOperator& op);

std::string operator_to_json(const ModeOperator& op);

}  // namespace clab

#endif
