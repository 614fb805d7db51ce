#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "clab/fourier.hpp"

using namespace clab;

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

TEST_CASE("derivative of cos is minus sin") {
  const FourierSeries f = FourierSeries::harmonic_cos(1, 1.0);
  const FourierSeries df = derivative(f);
  for (int i = 0; i < 16; ++i) {
    const double s = kTwoPi * i / 16;
    CHECK(df.eval_real(s) == doctest::Approx(-std::sin(s)).epsilon(1e-14));
  }
  CHECK(derivative(FourierSeries::constant(3.0)).empty());
  CHECK(df.real());
}

TEST_CASE("derivative sup of exp exponent") {
  // g = 0.1 cos s -> sup |g'| = 0.1, checked by dense sampling
  const FourierSeries g = FourierSeries::harmonic_cos(1, 0.1);
  CHECK(derivative(g).sup_abs(4096) == doctest::Approx(0.1).epsilon(1e-8));
}

TEST_CASE("product convolution") {
  const FourierSeries c = FourierSeries::harmonic_cos(1, 1.0);
  const FourierSeries cc = product(c, c);  // 1/2 + cos(2s)/2
  CHECK(cc.coeff(0).real() == doctest::Approx(0.5));
  CHECK(cc.coeff(2).real() == doctest::Approx(0.25));
  CHECK(cc.coeff(1) == cxd(0.0));

  const FourierSeries f = FourierSeries::harmonic_sin(3, 0.7) + FourierSeries::constant(0.2);
  const FourierSeries one = FourierSeries::constant(1.0);
  const FourierSeries same = product(f, one);
  for (int m = -4; m <= 4; ++m) CHECK(std::abs(same.coeff(m) - f.coeff(m)) < 1e-15);
}

TEST_CASE("exp series against pointwise exponential") {
  const FourierSeries g = FourierSeries::harmonic_cos(1, 0.1);
  const FourierSeries c = exp_series(g, 1e-12);
  CHECK(c.eval_real(0.0) == doctest::Approx(std::exp(0.1)).epsilon(1e-12));
  double worst = 0.0;
  for (int i = 0; i < 512; ++i) {
    const double s = kTwoPi * i / 512;
    worst = std::max(worst, std::abs(c.eval_real(s) - std::exp(0.1 * std::cos(s))));
  }
  CHECK(worst < 1e-12);

  const FourierSeries unit = product(c, exp_series(-1.0 * g, 1e-13));
  double defect = std::abs(unit.coeff(0) - 1.0);
  for (int m = 1; m <= unit.support(); ++m)
    defect = std::max({defect, std::abs(unit.coeff(m)), std::abs(unit.coeff(-m))});
  CHECK(defect < 1e-12);

  CHECK(exp_series(FourierSeries(), 1e-12).coeff(0).real() == doctest::Approx(1.0));
}

TEST_CASE("exp series rejects unreachable tolerance") {
  // A huge exponent needs more than 512 modes for 1e-12 pointwise accuracy.
  const FourierSeries g = FourierSeries::harmonic_cos(120, 40.0);
  CHECK_THROWS_AS(exp_series(g, 1e-12), std::runtime_error);
}

TEST_CASE("reciprocal series") {
  const FourierSeries c = exp_series(FourierSeries::harmonic_cos(1, 0.3), 1e-13);
  const FourierSeries inv = reciprocal_series(c, 1e-12);
  for (int i = 0; i < 64; ++i) {
    const double s = kTwoPi * i / 64;
    CHECK(inv.eval_real(s) == doctest::Approx(1.0 / c.eval_real(s)).epsilon(1e-11));
  }
  CHECK_THROWS_AS(reciprocal_series(FourierSeries::harmonic_cos(1, 1.0), 1e-12),
                  std::invalid_argument);
}

TEST_CASE("mode lattice points and membership") {
  const ModeLattice periodic(0.0, 3);
  CHECK(periodic.size() == 7);
  CHECK(periodic.contains(0.0));
  CHECK(periodic.contains(-3.0));
  CHECK_FALSE(periodic.contains(0.5));

  const ModeLattice anti(0.5, 3);
  CHECK(anti.size() == 6);
  CHECK(anti.contains(0.5));
  CHECK(anti.contains(-2.5));
  CHECK_FALSE(anti.contains(0.0));  // the half-integer lattice excludes 0

  CHECK_THROWS_AS(ModeLattice(0.25, 3), std::invalid_argument);
  CHECK_THROWS_AS(ModeLattice(0.0, 0), std::invalid_argument);
}

TEST_CASE("toeplitz matrix basics") {
  const ModeLattice lattice(0.0, 4);
  const Eigen::MatrixXcd id = toeplitz_matrix(FourierSeries::constant(1.0), lattice);
  CHECK((id - Eigen::MatrixXcd::Identity(9, 9)).cwiseAbs().maxCoeff() == 0.0);

  const Eigen::MatrixXcd t = toeplitz_matrix(FourierSeries::harmonic_cos(1, 1.0), lattice);
  CHECK(t(0, 1).real() == doctest::Approx(0.5));
  CHECK(t(1, 0).real() == doctest::Approx(0.5));
  CHECK(t(0, 0) == cxd(0.0));
  CHECK((t - t.adjoint()).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("toeplitz composition is exact on the inner window") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> amp(-1.0, 1.0);
  FourierSeries f = FourierSeries::constant(amp(rng));
  FourierSeries g = FourierSeries::constant(amp(rng));
  for (int k = 1; k <= 2; ++k) {
    f += FourierSeries::harmonic_cos(k, amp(rng));
    g += FourierSeries::harmonic_sin(k, amp(rng));
  }
  const ModeLattice lattice(0.5, 10);
  const Eigen::MatrixXcd lhs = toeplitz_matrix(product(f, g), lattice);
  const Eigen::MatrixXcd rhs = toeplitz_matrix(f, lattice) * toeplitz_matrix(g, lattice);
  const int n = lattice.size();
  const int pad = f.support() + g.support();
  double defect = 0.0;
  for (int i = pad; i < n - pad; ++i)
    for (int j = pad; j < n - pad; ++j) defect = std::max(defect, std::abs(lhs(i, j) - rhs(i, j)));
  CHECK(defect < 1e-13);
}

TEST_CASE("multiplication operator spectrum lies in the range of f") {
  // Hermitian Toeplitz compression of a real multiplier: numerical range
  // inside [min f, max f].
  const FourierSeries f = FourierSeries::constant(0.3) + FourierSeries::harmonic_cos(2, 0.9);
  const ModeLattice lattice(0.0, 12);
  const Eigen::MatrixXcd t = toeplitz_matrix(f, lattice);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(t);
  const double lo = f.min_real(4096);
  double hi = -1e300;
  for (int i = 0; i < 4096; ++i) hi = std::max(hi, f.eval_real(kTwoPi * i / 4096));
  CHECK(es.eigenvalues().minCoeff() >= lo - 1e-10);
  CHECK(es.eigenvalues().maxCoeff() <= hi + 1e-10);
}

TEST_CASE("real flag bookkeeping") {
  FourierSeries f = FourierSeries::harmonic_cos(2, 1.0) + FourierSeries::harmonic_sin(1, -0.4);
  CHECK(f.real());
  CHECK(f.real_symmetry_defect() < 1e-16);
  CHECK(product(f, f).real());
  CHECK(derivative(f).real());
}
