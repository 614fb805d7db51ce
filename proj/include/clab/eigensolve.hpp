#ifndef CLAB_EIGENSOLVE_HPP
#define CLAB_EIGENSOLVE_HPP

#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "clab/fourier.hpp"

namespace clab {

struct solver_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Sorted eigenvalue list. window is the radius inside which the values are
// declared converged at the producing truncation; values outside it are
// still listed but flagged by in_window().
struct Spectrum {
  std::vector<double> values;
  double window = std::numeric_limits<double>::infinity();
  std::string provenance;

  std::vector<double> in_window(double radius) const;
  std::vector<double> in_window() const { return in_window(window); }
  double min_abs() const;
};

// Householder reduction of a Hermitian matrix to real symmetric tridiagonal
// form. The reflectors stay packed below the first subdiagonal of `packed`
// together with their scalar factors, so eigenvectors of the tridiagonal can
// be transformed back for residual checks.
struct Tridiagonal {
  Eigen::MatrixXcd packed;
  std::vector<cxd> tau;
  std::vector<double> diag;
  std::vector<double> sub;  // length n-1
};

// The serial and OpenMP variants perform the identical floating-point
// operations in the identical order (all cross-thread work is elementwise),
// so their outputs agree bitwise. The parallel variant is the production
// path; the serial one is the reference kept for testing and benchmarks.
Tridiagonal tridiagonalize_serial(const Eigen::MatrixXcd& h);
Tridiagonal tridiagonalize_parallel(const Eigen::MatrixXcd& h);

// Implicit-shift QL with Wilkinson shifts on a real symmetric tridiagonal.
// Throws solver_error after 50 sweeps on any single eigenvalue.
std::vector<double> ql_eigenvalues(std::vector<double> diag, std::vector<double> sub);

// All eigenvalues of a Hermitian matrix (size <= 8192). Rejects matrices
// whose Hermiticity defect exceeds 1e-12 relative to the largest entry.
Spectrum eigenvalues(const Eigen::MatrixXcd& h);
Spectrum eigenvalues_serial(const Eigen::MatrixXcd& h);

// Max residual |H v - lambda v| over `samples` eigenpairs spread across the
// spectrum, with eigenvectors recomputed by tridiagonal inverse iteration
// and back-transformation.
double residual_spot_check(const Eigen::MatrixXcd& h, int samples = 10);

Spectrum window(const Spectrum& s, double radius);

// Symmetric Hausdorff distance between the windowed sets, multiplicity
// ignored. Throws if either windowed set is empty.
double hausdorff_distance(const Spectrum& a, const Spectrum& b, double radius);

// Max over the windowed values of `of` of the distance to the nearest value
// of `against` (taken unwindowed). Throws if the windowed set is empty.
double one_sided_distance(const Spectrum& of, const Spectrum& against, double radius);

// Max difference over the m values nearest zero from each spectrum, paired
// in ascending order. Values are drawn from each spectrum's own window.
double matched_distance(const Spectrum& a, const Spectrum& b, int count);

}  // namespace clab

#endif
