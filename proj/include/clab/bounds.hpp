#ifndef CLAB_BOUNDS_HPP
#define CLAB_BOUNDS_HPP

#include <optional>
#include <string>
#include <vector>

#include "clab/eigensolve.hpp"
#include "clab/models.hpp"
#include "clab/potentials.hpp"

namespace clab {

// Lower bound on |lambda_{k,j}| for nonzero fiber modes:
//   sinh( arsinh( |k|/l - (1/2) [n/2]^{1/2} C_A - eps ) - eps ) - Lambda.
// Monotone increasing in |k|; decreasing in l, C_A, Lambda and eps.
double divergence_bound(double k, double l, double c_a, double lambda, int n, double eps);

// Norm bound on the curvature term of the splitting:
//   | (1/4) gamma(e_0) gamma(lF) |  <=  (1/2) [n/2]^{1/2} C_A.
double mh_norm_bound(int n, double c_a);

struct KatoResult {
  bool pass = false;
  double margin = 0.0;
  double max_distance = 0.0;
};

// Perturbation check: every windowed eigenvalue of the perturbed spectrum
// must lie within lambda of the base spectrum. Requires both spectra
// reliable on [-radius - lambda, radius + lambda].
KatoResult kato_check(const Spectrum& base, const Spectrum& perturbed, double lambda,
                      double radius);

struct BoundsRow {
  double k = 0.0;
  double lower_bound = 0.0;
  double observed_min_abs = 0.0;
  bool pass = false;
  bool converged = false;  // min |lambda| stable under doubling the cutoff
};

struct BoundsReport {
  std::string model_id;
  double c_a = 0.0;
  double c_t = 0.0;
  double lambda = 0.0;
  double fiber_length = 0.0;  // sup_s l(s), the scalar used in the bound
  std::vector<BoundsRow> per_mode;
  std::optional<double> kato_margin;  // present when a potential was audited
  std::vector<std::string> warnings;

  bool all_pass() const;
};

// Computes spectra for every requested fiber mode, evaluates the divergence
// bound with C_A from the tensor report, l = sup fiber length, Lambda = sup
// norm of the potential (fallback_lambda without one) and zero proof slack,
// and flags each mode. With a potential present, also audits the
// perturbation distance per mode.
BoundsReport audit(const BundleModel& model, const std::vector<double>& ks, int cutoff,
                   const PotentialSpec* potential, double fallback_lambda = 0.0);

std::string bounds_report_json(const BoundsReport& report);

}  // namespace clab

#endif
