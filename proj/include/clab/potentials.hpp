#ifndef CLAB_POTENTIALS_HPP
#define CLAB_POTENTIALS_HPP

#include <vector>

#include <Eigen/Dense>

#include "clab/fourier.hpp"
#include "clab/models.hpp"

namespace clab {

// One summand of a symmetric potential
//   Z(s, y, t) = sum_terms e^{i 2 pi j t} base_s(s) base_y(y) matrix_part,
// with the fiber parametrized by t of period one. base_y is the second
// base coordinate factor, constant 1 on one-dimensional bases.
struct PotentialTerm {
  int fiber_mode = 0;
  FourierSeries base_s = FourierSeries::constant(1.0);
  FourierSeries base_y = FourierSeries::constant(1.0);
  Eigen::MatrixXcd matrix_part = Eigen::MatrixXcd::Identity(2, 2);
};

struct PotentialSpec {
  std::vector<PotentialTerm> terms;

  bool invariant() const;  // only fiber-mode 0 terms
};

// Largest pointwise deviation of Z(x) from Hermitian over a sample grid.
// Symmetric potentials require a conjugate term at -j for every term at j.
double hermiticity_defect(const PotentialSpec& z);

// Throws when the potential is not pointwise Hermitian.
void validate(const PotentialSpec& z);

// Fiber average: retains exactly the fiber-mode-0 terms (single harmonics
// average without quadrature error). Idempotent and linear.
PotentialSpec average(const PotentialSpec& z);

// Galerkin matrix of an invariant potential on the plain (unsplit) V_0
// basis of the model, matching the mode_operator basis layout.
Eigen::MatrixXcd assemble_v0_plain(const PotentialSpec& z, const BundleModel& model, int cutoff);

// Restriction to the base in the basis of the limit operator: one-dimensional
// bases are expressed in the nu-split spinor basis, the Heisenberg base is
// already identified with base spinors. Requires an invariant potential.
Eigen::MatrixXcd restrict_v0(const PotentialSpec& z, const BundleModel& model, int cutoff);

// (sup |Z|, sup |Z| + sup |grad Z|) over the sample grid, with the fiber
// derivative measured against the collapsed metric: a fiber-mode-j term
// contributes |2 pi j| / l(s).
std::pair<double, double> norms(const PotentialSpec& z, const BundleModel& model);

// Operator norm of (Z - average(Z)) applied to invariant spinors at the
// given truncation; the quantity whose decay the averaging sweep tracks.
double v0_defect_norm(const PotentialSpec& z, const BundleModel& model, int cutoff);

}  // namespace clab

#endif
