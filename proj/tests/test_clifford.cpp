#include <doctest.h>

#include <cmath>

#include "clab/clifford.hpp"

using namespace clab;

namespace {

double max_abs(const Eigen::MatrixXcd& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace

TEST_CASE("representation invariants for n = 1, 2, 3") {
  for (int n = 1; n <= 3; ++n) {
    const CliffordRep rep = build_rep(n);
    CHECK(rep.dim() == (n == 1 ? 1 : 2));
    CHECK(check_invariants(rep).empty());
    const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(rep.dim(), rep.dim());
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        const Eigen::MatrixXcd anti =
            rep.gammas[i] * rep.gammas[j] + rep.gammas[j] * rep.gammas[i];
        CHECK(max_abs(anti + (i == j ? 2.0 : 0.0) * id) < 1e-14);
      }
    CHECK(max_abs(rep.omega * rep.omega - id) < 1e-14);
  }
  CHECK_THROWS_AS(build_rep(0), std::invalid_argument);
  CHECK_THROWS_AS(build_rep(4), std::invalid_argument);
}

TEST_CASE("pinned low-dimensional matrices") {
  const CliffordRep r1 = build_rep(1);
  CHECK(r1.gammas[0](0, 0) == cxd(0, 1));

  const CliffordRep r2 = build_rep(2);
  Eigen::MatrixXcd omega2(2, 2);
  omega2 << 1, 0, 0, -1;
  CHECK(max_abs(cxd(0, 1) * r2.gammas[0] * r2.gammas[1] - omega2) < 1e-15);
  CHECK(max_abs(r2.omega - omega2) < 1e-15);

  const CliffordRep r3 = build_rep(3);
  const Eigen::MatrixXcd prod = r3.gammas[0] * r3.gammas[1] * r3.gammas[2];
  CHECK(max_abs(prod + Eigen::MatrixXcd::Identity(2, 2)) < 1e-15);  // gamma1 gamma2 gamma3 = -Id
  CHECK(max_abs(r3.omega - Eigen::MatrixXcd::Identity(2, 2)) < 1e-15);
}

TEST_CASE("two-form action") {
  const CliffordRep rep = build_rep(2);
  Eigen::MatrixXd zero = Eigen::MatrixXd::Zero(2, 2);
  CHECK(max_abs(gamma_two_form(rep, zero)) == 0.0);

  Eigen::MatrixXd f = zero;
  f(0, 1) = 2.0;
  f(1, 0) = -2.0;
  const Eigen::MatrixXcd gf = gamma_two_form(rep, f);
  CHECK(max_abs(gf - 2.0 * rep.gammas[0] * rep.gammas[1]) < 1e-15);
  // i gamma(F) Hermitian for real F
  const Eigen::MatrixXcd igf = cxd(0, 1) * gf;
  CHECK(max_abs(igf - igf.adjoint()) < 1e-15);
  // (i/4) omega gamma(F) = (c/4) Id
  const Eigen::MatrixXcd scalar = cxd(0, 0.25) * rep.omega * gf;
  CHECK(max_abs(scalar - 0.5 * Eigen::MatrixXcd::Identity(2, 2)) < 1e-15);

  Eigen::MatrixXd bad = zero;
  bad(0, 1) = 1.0;  // not antisymmetric
  CHECK_THROWS_AS(gamma_two_form(rep, bad), std::invalid_argument);
}

TEST_CASE("three-dimensional curvature scalar has the pinned sign") {
  // -(1/4) gamma(e_0) gamma(F), F(e_1,e_2) = b, e_0 the last generator:
  // equals +(b/4) Id under the omega_3 = +Id convention.
  const CliffordRep rep = build_rep(3);
  const double b = 0.8;
  Eigen::MatrixXd f = Eigen::MatrixXd::Zero(3, 3);
  f(0, 1) = b;
  f(1, 0) = -b;
  const Eigen::MatrixXcd term = -0.25 * rep.gammas[2] * gamma_two_form(rep, f);
  CHECK(max_abs(term - (b / 4.0) * Eigen::MatrixXcd::Identity(2, 2)) < 1e-15);
}

TEST_CASE("even-odd splitting") {
  const CliffordRep rep = build_rep(2);
  const SplitProjectors split = split_even_odd(rep);
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(2, 2);
  CHECK(max_abs(split.p_plus + split.p_minus - id) < 1e-15);
  CHECK(max_abs(split.p_plus * split.p_plus - split.p_plus) < 1e-15);
  CHECK(max_abs(split.p_plus * split.p_minus) < 1e-15);
  CHECK(std::abs(split.p_plus.trace() - cxd(1.0)) < 1e-15);

  const Eigen::MatrixXcd nu = cxd(0, 1) * rep.gammas[0];
  CHECK(max_abs(nu * split.basis.col(0) - split.basis.col(0)) < 1e-14);
  CHECK(max_abs(nu * split.basis.col(1) + split.basis.col(1)) < 1e-14);

  // i gamma(e_0) swaps the eigenspaces
  const Eigen::MatrixXcd swap = cxd(0, 1) * rep.gammas[1];
  CHECK(max_abs(swap * split.p_plus - split.p_minus * swap) < 1e-14);

  CHECK_THROWS_AS(split_even_odd(build_rep(1)), std::invalid_argument);
}

TEST_CASE("fault injection is caught with a named invariant") {
  CliffordRep rep = build_rep(2);
  rep.gammas[0] = -rep.gammas[0];  // corrupt one gamma sign
  const auto violations = check_invariants(rep);
  bool named = false;
  for (const auto& v : violations) named = named || v == "omega_consistency";
  CHECK(named);

  CliffordRep rep3 = build_rep(3);
  rep3.gammas[2] = -rep3.gammas[2];
  const auto v3 = check_invariants(rep3);
  bool omega_broken = false;
  for (const auto& v : v3) omega_broken = omega_broken || v == "omega3_identity";
  CHECK(omega_broken);
}
