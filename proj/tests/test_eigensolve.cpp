#include <doctest.h>

#include <cmath>
#include <random>

#include "clab/eigensolve.hpp"

using namespace clab;

namespace {

Eigen::MatrixXcd random_hermitian(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::MatrixXcd a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = cxd(gauss(rng), gauss(rng));
  return 0.5 * (a + a.adjoint()).eval();
}

}  // namespace

TEST_CASE("small exact cases") {
  Eigen::MatrixXcd d = Eigen::MatrixXcd::Zero(3, 3);
  d(0, 0) = 3.0;
  d(1, 1) = 1.0;
  d(2, 2) = 2.0;
  const Spectrum sd = eigenvalues(d);
  CHECK(sd.values == std::vector<double>{1.0, 2.0, 3.0});

  Eigen::MatrixXcd x(2, 2);
  x << 0, 1, 1, 0;
  const Spectrum sx = eigenvalues(x);
  CHECK(sx.values[0] == doctest::Approx(-1.0).epsilon(1e-15));
  CHECK(sx.values[1] == doctest::Approx(1.0).epsilon(1e-15));

  Eigen::MatrixXcd t = Eigen::MatrixXcd::Zero(3, 3);
  t(0, 0) = t(1, 1) = t(2, 2) = 2.0;
  t(0, 1) = t(1, 0) = t(1, 2) = t(2, 1) = 1.0;
  const Spectrum st = eigenvalues(t);
  CHECK(std::abs(st.values[0] - (2.0 - std::sqrt(2.0))) < 1e-13);
  CHECK(std::abs(st.values[1] - 2.0) < 1e-13);
  CHECK(std::abs(st.values[2] - (2.0 + std::sqrt(2.0))) < 1e-13);
}

TEST_CASE("input validation") {
  Eigen::MatrixXcd nonherm(2, 2);
  nonherm << 0, 1, 2, 0;
  CHECK_THROWS_AS(eigenvalues(nonherm), std::invalid_argument);
}

TEST_CASE("trace and Frobenius identities on random matrices") {
  for (int n : {8, 64, 256}) {
    const Eigen::MatrixXcd a = random_hermitian(n, 1000 + n);
    const Spectrum s = eigenvalues(a);
    REQUIRE(static_cast<int>(s.values.size()) == n);
    double sum = 0.0, sum2 = 0.0;
    for (double v : s.values) {
      sum += v;
      sum2 += v * v;
    }
    double trace = 0.0;
    for (int i = 0; i < n; ++i) trace += a(i, i).real();
    const double frob2 = a.squaredNorm();
    const double norm = std::max(std::abs(s.values.front()), std::abs(s.values.back()));
    CHECK(std::abs(sum - trace) <= 1e-10 * n * norm);
    CHECK(std::abs(sum2 - frob2) <= 1e-10 * n * frob2);
  }
}

TEST_CASE("agreement with an independent dense solver") {
  const Eigen::MatrixXcd a = random_hermitian(120, 5);
  const Spectrum s = eigenvalues(a);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(a);
  for (int i = 0; i < 120; ++i)
    CHECK(std::abs(s.values[i] - es.eigenvalues()(i)) < 1e-10 * (1.0 + std::abs(s.values[i])));
}

TEST_CASE("scalar shift moves the spectrum exactly") {
  const int n = 40;
  const Eigen::MatrixXcd a = random_hermitian(n, 7);
  const double lambda = 0.37;
  const Spectrum s0 = eigenvalues(a);
  const Spectrum s1 = eigenvalues(a + lambda * Eigen::MatrixXcd::Identity(n, n));
  for (int i = 0; i < n; ++i) CHECK(std::abs(s1.values[i] - s0.values[i] - lambda) < 1e-12);
}

TEST_CASE("serial and parallel paths agree bitwise and rerun identically") {
  for (int n : {64, 150, 300}) {
    const Eigen::MatrixXcd a = random_hermitian(n, 42 + n);
    const Spectrum sp = eigenvalues(a);
    const Spectrum ss = eigenvalues_serial(a);
    const Spectrum again = eigenvalues(a);
    REQUIRE(sp.values.size() == ss.values.size());
    for (size_t i = 0; i < sp.values.size(); ++i) {
      CHECK(sp.values[i] == ss.values[i]);
      CHECK(sp.values[i] == again.values[i]);
    }
  }
}

TEST_CASE("residual spot check") {
  const Eigen::MatrixXcd a = random_hermitian(90, 11);
  const Spectrum s = eigenvalues(a);
  const double norm = std::max(std::abs(s.values.front()), std::abs(s.values.back()));
  CHECK(residual_spot_check(a, 10) <= 1e-10 * norm);
}

TEST_CASE("window and distances") {
  Spectrum s;
  s.values = {-1.0, -0.3, 0.2, 1.0};
  const Spectrum w = window(s, 0.4);
  CHECK(w.values == std::vector<double>{-0.3, 0.2});
  CHECK(window(s, 10.0).values == s.values);
  CHECK_THROWS_AS(window(s, 0.0), std::invalid_argument);

  Spectrum a, b;
  a.values = {0.0, 1.0};
  b.values = {0.25, 1.0};
  CHECK(hausdorff_distance(a, a, 2.0) == 0.0);
  CHECK(hausdorff_distance(a, b, 2.0) == doctest::Approx(0.25));
  Spectrum empty;
  empty.values = {5.0};
  CHECK_THROWS_AS(hausdorff_distance(a, empty, 2.0), std::invalid_argument);

  // shift by lambda moves the Hausdorff distance to exactly |lambda| when
  // the windowed sets are shift stable
  Spectrum c, cs;
  c.values = {-2.0, -1.0, 0.0, 1.0, 2.0};
  for (double v : c.values) cs.values.push_back(v + 0.125);
  CHECK(hausdorff_distance(c, cs, 10.0) == doctest::Approx(0.125));
}

TEST_CASE("matched distance") {
  Spectrum a, b;
  a.values = {-2.0, -1.0, 0.5, 1.5, 30.0};
  b.values = {-2.0, -1.0, 0.5, 1.5};
  CHECK(matched_distance(a, b, 4) == 0.0);  // invariant under far-out extras
  b.values[2] = 0.501;
  CHECK(matched_distance(a, b, 4) == doctest::Approx(1e-3));
  CHECK_THROWS_AS(matched_distance(a, b, 10), std::invalid_argument);
}

TEST_CASE("windowed flat-torus counting matches lattice enumeration") {
  // Dirac blocks on Z^2: eigenvalues +/-|v| per lattice point; the windowed
  // count must equal 2 x #{v : |v| <= R}.
  const int cutoff = 6;
  std::vector<double> values;
  int lattice_count = 0;
  const double radius = 2.5;
  for (int p = -cutoff; p <= cutoff; ++p)
    for (int q = -cutoff; q <= cutoff; ++q) {
      const double r = std::hypot(p, q);
      values.push_back(r);
      values.push_back(-r);
      if (r <= radius) ++lattice_count;
    }
  std::sort(values.begin(), values.end());
  Spectrum s;
  s.values = values;
  CHECK(static_cast<int>(window(s, radius).values.size()) == 2 * lattice_count);
}
