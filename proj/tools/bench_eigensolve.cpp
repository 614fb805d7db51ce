// Benchmark: serial vs OpenMP Householder tridiagonalization on random
// Hermitian matrices. The two paths must agree bitwise; the table reports
// wall times and the speedup.

#include <cstdio>
#include <cstdlib>
#include <random>
#include <vector>

#include <omp.h>

#include <Eigen/Dense>

#include "clab/eigensolve.hpp"

namespace {

Eigen::MatrixXcd random_hermitian(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::MatrixXcd a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = clab::cxd(gauss(rng), gauss(rng));
  return 0.5 * (a + a.adjoint()).eval();
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<int> sizes = {128, 256, 512};
  if (argc > 1) {
    sizes.clear();
    for (int i = 1; i < argc; ++i) sizes.push_back(std::atoi(argv[i]));
  }
  std::printf("threads available: %d\n", omp_get_max_threads());
  std::printf("%8s %14s %14s %10s %8s\n", "size", "serial[s]", "parallel[s]", "speedup",
              "bitwise");
  for (int n : sizes) {
    const Eigen::MatrixXcd h = random_hermitian(n, 99 + n);

    double t0 = omp_get_wtime();
    clab::Tridiagonal ts = clab::tridiagonalize_serial(h);
    std::vector<double> es = clab::ql_eigenvalues(ts.diag, ts.sub);
    const double serial = omp_get_wtime() - t0;

    t0 = omp_get_wtime();
    clab::Tridiagonal tp = clab::tridiagonalize_parallel(h);
    std::vector<double> ep = clab::ql_eigenvalues(tp.diag, tp.sub);
    const double parallel = omp_get_wtime() - t0;

    bool bitwise = es.size() == ep.size();
    for (size_t i = 0; bitwise && i < es.size(); ++i) bitwise = es[i] == ep[i];
    std::printf("%8d %14.4f %14.4f %9.2fx %8s\n", n, serial, parallel,
                parallel > 0 ? serial / parallel : 0.0, bitwise ? "yes" : "NO");
    if (!bitwise) return 1;
  }
  return 0;
}
