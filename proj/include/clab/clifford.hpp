#ifndef CLAB_CLIFFORD_HPP
#define CLAB_CLIFFORD_HPP

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "clab/fourier.hpp"

namespace clab {

// Explicit representation of Cl(n) on C^{2^[n/2]} with skew-Hermitian
// generators, gamma_i gamma_j + gamma_j gamma_i = -2 delta_ij.
// omega is the complex volume element i^[(n+1)/2] gamma_1 ... gamma_n,
// normalized so that omega^2 = Id; for n = 3 the generator signs are
// fixed so that omega = +Id.
//
// Frame convention used throughout the operator assemblies: in a total
// space of dimension n+1 the *last* generator is the vertical direction
// e_0 and the first n generators are the horizontal frame e_1..e_n,
// matching the generators of build_rep(n) entrywise.
struct CliffordRep {
  int n = 0;
  std::vector<Eigen::MatrixXcd> gammas;
  Eigen::MatrixXcd omega;

  int dim() const { return gammas.empty() ? 0 : static_cast<int>(gammas[0].rows()); }
};

CliffordRep build_rep(int n);

// gamma(F) = sum_{i<j} F(i,j) gamma_i gamma_j for an antisymmetric
// coefficient table F. For real F, i*gamma(F) is Hermitian.
Eigen::MatrixXcd gamma_two_form(const CliffordRep& rep, const Eigen::MatrixXd& coeffs);

// Orthogonal projectors onto the +/-1 eigenspaces of nu = i gamma(e_1)
// in the 2-dimensional total rep (base dimension 1). basis holds the
// unit eigenvectors as columns [v_plus v_minus].
struct SplitProjectors {
  Eigen::MatrixXcd p_plus;
  Eigen::MatrixXcd p_minus;
  Eigen::MatrixXcd basis;
};

SplitProjectors split_even_odd(const CliffordRep& total_rep);

// Names of violated representation invariants; empty means valid.
std::vector<std::string> check_invariants(const CliffordRep& rep);

}  // namespace clab

#endif
