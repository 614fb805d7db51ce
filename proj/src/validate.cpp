#include "clab/validate.hpp"

#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>

#include "clab/bounds.hpp"
#include "clab/clifford.hpp"
#include "clab/eigensolve.hpp"
#include "clab/fourier.hpp"
#include "clab/models.hpp"
#include "clab/operators.hpp"
#include "clab/potentials.hpp"

namespace clab {

namespace {

struct Harness {
  std::ostream& out;
  ValidationSummary summary;

  void check(const std::string& module, const std::string& name, bool ok,
             const std::string& detail = "") {
    auto& [pass, fail] = summary.per_module[module];
    if (ok) {
      ++pass;
      ++summary.passed;
    } else {
      ++fail;
      ++summary.failed;
    }
    out << (ok ? "[ok]   " : "[FAIL] ") << module << '.' << name;
    if (!detail.empty()) out << ": " << detail;
    out << '\n';
  }
};

BundleModel flat_torus(double eps, double base_offset, FiberSpin spin) {
  BundleModel m;
  m.kind = BundleKind::WarpedTorus;
  m.id = "validate_flat";
  m.epsilon = eps;
  m.warping = FourierSeries::constant(1.0);
  m.fiber_spin = spin;
  m.base_spin = {base_offset};
  return m;
}

}  // namespace

ValidationSummary run_validation(std::ostream& out) {
  Harness h{out, {}};

  // clifford ------------------------------------------------------------
  for (int n = 1; n <= 3; ++n) {
    const CliffordRep rep = build_rep(n);
    const auto violations = check_invariants(rep);
    std::string joined;
    for (const auto& v : violations) joined += v + " ";
    h.check("clifford", "invariants_n" + std::to_string(n), violations.empty(), joined);
  }
  {
    const CliffordRep rep = build_rep(2);
    Eigen::MatrixXd f = Eigen::MatrixXd::Zero(2, 2);
    f(0, 1) = 0.7;
    f(1, 0) = -0.7;
    const Eigen::MatrixXcd scalar = cxd(0, 0.25) * rep.omega * gamma_two_form(rep, f);
    const Eigen::MatrixXcd defect = scalar - scalar(0, 0) * Eigen::MatrixXcd::Identity(2, 2);
    h.check("clifford", "two_form_scalar_rule",
            defect.cwiseAbs().maxCoeff() < 1e-14 &&
                std::abs(scalar(0, 0) - cxd(0.7 / 4.0, 0.0)) < 1e-14);
    const SplitProjectors split = split_even_odd(rep);
    const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(2, 2);
    const Eigen::MatrixXcd swap = cxd(0, 1) * rep.gammas[1];
    h.check("clifford", "split_projectors",
            (split.p_plus + split.p_minus - id).cwiseAbs().maxCoeff() < 1e-14 &&
                (swap * split.p_plus - split.p_minus * swap).cwiseAbs().maxCoeff() < 1e-13);
  }

  // fourier --------------------------------------------------------------
  {
    std::mt19937_64 rng(12345);
    std::uniform_real_distribution<double> amp(-1.0, 1.0);
    bool leibniz_ok = true;
    for (int trial = 0; trial < 20; ++trial) {
      FourierSeries f = FourierSeries::constant(amp(rng));
      FourierSeries g = FourierSeries::constant(amp(rng));
      for (int k = 1; k <= 4; ++k) {
        f += FourierSeries::harmonic_cos(k, amp(rng)) + FourierSeries::harmonic_sin(k, amp(rng));
        g += FourierSeries::harmonic_cos(k, amp(rng)) + FourierSeries::harmonic_sin(k, amp(rng));
      }
      FourierSeries lhs = derivative(product(f, g));
      FourierSeries rhs = product(derivative(f), g) + product(f, derivative(g));
      double defect = 0.0;
      for (int m = -10; m <= 10; ++m) defect = std::max(defect, std::abs(lhs.coeff(m) - rhs.coeff(m)));
      leibniz_ok = leibniz_ok && defect < 1e-13;
    }
    h.check("fourier", "leibniz_identity", leibniz_ok);

    const FourierSeries g = FourierSeries::harmonic_cos(1, 0.1);
    const FourierSeries c = exp_series(g, 1e-12);
    const FourierSeries cinv = exp_series(-1.0 * g, 1e-12);
    const FourierSeries one = product(c, cinv);
    double defect = std::abs(one.coeff(0) - 1.0);
    for (int m = 1; m <= one.support(); ++m)
      defect = std::max(defect, std::max(std::abs(one.coeff(m)), std::abs(one.coeff(-m))));
    h.check("fourier", "exp_inverse_product", defect < 1e-12);
    h.check("fourier", "exp_value_at_zero", std::abs(c.eval_real(0.0) - std::exp(0.1)) < 1e-12);
  }

  // eigensolve -----------------------------------------------------------
  {
    Eigen::MatrixXcd t3 = Eigen::MatrixXcd::Zero(3, 3);
    t3(0, 0) = t3(1, 1) = t3(2, 2) = 2.0;
    t3(0, 1) = t3(1, 0) = t3(1, 2) = t3(2, 1) = 1.0;
    const Spectrum s = eigenvalues(t3);
    const double r2 = std::sqrt(2.0);
    h.check("eigensolve", "analytic_3x3",
            std::abs(s.values[0] - (2.0 - r2)) < 1e-13 && std::abs(s.values[1] - 2.0) < 1e-13 &&
                std::abs(s.values[2] - (2.0 + r2)) < 1e-13);

    std::mt19937_64 rng(777);
    std::normal_distribution<double> gauss(0.0, 1.0);
    const int n = 64;
    Eigen::MatrixXcd a(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) a(i, j) = cxd(gauss(rng), gauss(rng));
    a = 0.5 * (a + a.adjoint()).eval();
    const Spectrum sa = eigenvalues(a);
    const Spectrum sb = eigenvalues_serial(a);
    bool bitwise = sa.values.size() == sb.values.size();
    for (size_t i = 0; bitwise && i < sa.values.size(); ++i)
      bitwise = sa.values[i] == sb.values[i];
    h.check("eigensolve", "parallel_matches_serial_bitwise", bitwise);

    double trace = 0.0, frob = 0.0;
    for (int i = 0; i < n; ++i) trace += a(i, i).real();
    frob = a.squaredNorm();
    double sum = 0.0, sum2 = 0.0;
    for (double v : sa.values) {
      sum += v;
      sum2 += v * v;
    }
    const double scale = std::max(std::abs(sa.values.front()), std::abs(sa.values.back()));
    h.check("eigensolve", "trace_frobenius_identities",
            std::abs(sum - trace) < 1e-10 * n * scale && std::abs(sum2 - frob) < 1e-10 * n * frob);
  }

  // models ---------------------------------------------------------------
  {
    BundleModel flat = flat_torus(0.1, 0.0, FiberSpin::Projectable);
    const TensorReport t0 = submersion_tensors(flat);
    h.check("models", "flat_product_tensors", t0.sup_a == 0.0 && t0.sup_t == 0.0);

    BundleModel warped = flat;
    warped.warping = exp_series(FourierSeries::harmonic_cos(1, 0.1), 1e-12);
    const TensorReport t1 = submersion_tensors(warped);
    h.check("models", "warped_sup_t", std::abs(t1.sup_t - 0.1) < 1e-6,
            "sup|c'/c| = " + std::to_string(t1.sup_t));

    BundleModel heis;
    heis.kind = BundleKind::HeisenbergBundle;
    heis.id = "validate_heis";
    heis.epsilon = 0.25;
    heis.b = 1.0 / (2.0 * std::numbers::pi);
    heis.base_spin = {0.0, 0.0};
    const TensorReport t2 = submersion_tensors(heis);
    h.check("models", "heisenberg_a_component",
            std::abs(t2.a_eiej_norm() - heis.b / 2.0) < 1e-15 && t2.sup_t == 0.0);
    h.check("models", "quotient_composition",
            quotient(quotient(heis, 4), 2).quotient_order == quotient(heis, 8).quotient_order);
    h.check("models", "curvature_mean_invariance",
            curvature_mean(quotient(heis, 8)) == curvature_mean(heis));
  }

  // operators ------------------------------------------------------------
  {
    BundleModel flat = flat_torus(0.1, 0.5, FiberSpin::Projectable);
    const Spectrum s = operator_spectrum(mode_operator(flat, 1.0, 12));
    const double expected = std::sqrt(0.25 + 100.0);
    h.check("operators", "flat_mode_closed_form", std::abs(s.min_abs() - expected) < 1e-10,
            "min|lambda| = " + std::to_string(s.min_abs()));

    BundleModel warped = flat_torus(0.1, 0.5, FiberSpin::Projectable);
    warped.warping = exp_series(FourierSeries::harmonic_cos(1, 0.3), 1e-12);
    const Spectrum w1 = operator_spectrum(mode_operator(warped, 0.0, 32));
    const Spectrum w2 = operator_spectrum(mode_operator(flat, 0.0, 32));
    h.check("operators", "k0_isospectrality", matched_distance(w1, w2, 20) < 1e-8);

    BundleModel heis;
    heis.kind = BundleKind::HeisenbergBundle;
    heis.id = "validate_heis";
    heis.epsilon = 0.25;
    heis.b = 1.0 / (2.0 * std::numbers::pi);
    heis.base_spin = {0.0, 0.0};
    const Spectrum v0 = operator_spectrum(heisenberg_v0_operator(heis, 10));
    const Spectrum lim = operator_spectrum(limit_operator(heis, nullptr, 10));
    h.check("operators", "heisenberg_two_path", matched_distance(v0, lim, 30) < 1e-10);

    BundleModel form = flat_torus(0.1, 0.0, FiberSpin::Projectable);
    form.kind = BundleKind::FormTorus;
    const Spectrum fs = operator_spectrum(form_mode_operator(form, false, 10));
    double worst = 0.0;
    for (double v : fs.in_window(5.5)) worst = std::max(worst, std::abs(v - std::round(v)));
    h.check("operators", "form_flat_integer_spectrum", worst < 1e-12);
  }

  // potentials -----------------------------------------------------------
  {
    PotentialSpec z;
    PotentialTerm plus, minus;
    plus.fiber_mode = 1;
    plus.base_s = FourierSeries::constant(0.5);
    minus.fiber_mode = -1;
    minus.base_s = FourierSeries::constant(0.5);
    z.terms = {plus, minus};  // cos(2 pi t) Id
    const PotentialSpec avg = average(z);
    h.check("potentials", "average_kills_oscillation", avg.terms.empty());
    h.check("potentials", "average_idempotent", average(avg).terms.empty());

    // Quadrature cross-check of the averaging identity.
    double quad = 0.0;
    for (int i = 0; i < 64; ++i) quad += std::cos(2.0 * std::numbers::pi * (i + 0.5) / 64.0);
    h.check("potentials", "average_quadrature", std::abs(quad / 64.0) < 1e-14);

    BundleModel flat = flat_torus(0.04, 0.5, FiberSpin::Projectable);
    const double defect = v0_defect_norm(z, flat, 10);
    h.check("potentials", "v0_defect_exact", std::abs(defect - std::sqrt(0.5)) < 1e-12,
            "norm = " + std::to_string(defect));
    const auto [sup, w1] = norms(z, flat);
    h.check("potentials", "w1inf_fiber_scaling",
            std::abs(sup - 1.0) < 1e-3 &&
                std::abs(w1 - (1.0 + 2.0 * std::numbers::pi / 0.04)) < 0.5);
  }

  // bounds ---------------------------------------------------------------
  {
    h.check("bounds", "sinh_arsinh_identity",
            std::abs(divergence_bound(1.0, 0.1, 0.0, 0.0, 1, 0.0) - 10.0) < 1e-12);
    h.check("bounds", "lambda_shift", std::abs(divergence_bound(0.5, 0.01, 0.0, 1.0, 1, 0.0) - 49.0) < 1e-12);
    h.check("bounds", "composite_value",
            std::abs(divergence_bound(1.0, 0.1, 0.2, 0.5, 2, 0.01) - 9.2910885718126677) < 1e-12);
    h.check("bounds", "mh_trivial", mh_norm_bound(3, 1.0) == 0.5 && mh_norm_bound(2, 0.0) == 0.0);

    std::mt19937_64 rng(4242);
    std::uniform_real_distribution<double> uni(0.01, 2.0);
    bool monotone = true;
    for (int trial = 0; trial < 100; ++trial) {
      const double k = uni(rng), l = uni(rng), ca = uni(rng), lam = uni(rng), eps = 0.3 * uni(rng);
      const double base = divergence_bound(k, l, ca, lam, 2, eps);
      monotone = monotone && divergence_bound(k + 0.3, l, ca, lam, 2, eps) >= base - 1e-12 &&
                 divergence_bound(k, l + 0.3, ca, lam, 2, eps) <= base + 1e-12 &&
                 divergence_bound(k, l, ca + 0.3, lam, 2, eps) <= base + 1e-12 &&
                 divergence_bound(k, l, ca, lam + 0.3, 2, eps) <= base + 1e-12 &&
                 divergence_bound(k, l, ca, lam, 2, eps + 0.2) <= base + 1e-12;
    }
    h.check("bounds", "monotonicity_sample", monotone);
  }

  out << "validation: " << h.summary.passed << " passed, " << h.summary.failed << " failed (";
  bool first = true;
  for (const auto& [module, counts] : h.summary.per_module) {
    if (!first) out << ", ";
    out << module << " " << counts.first << "/" << (counts.first + counts.second);
    first = false;
  }
  out << ")\n";
  return h.summary;
}

}  // namespace clab
