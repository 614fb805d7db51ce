#include "clab/clifford.hpp"

#include <stdexcept>

namespace clab {

namespace {

Eigen::MatrixXcd pauli(int which) {
  Eigen::MatrixXcd s(2, 2);
  switch (which) {
    case 1:
      s << 0, 1, 1, 0;
      break;
    case 2:
      s << 0, cxd(0, -1), cxd(0, 1), 0;
      break;
    default:
      s << 1, 0, 0, -1;
      break;
  }
  return s;
}

Eigen::MatrixXcd volume_element(const std::vector<Eigen::MatrixXcd>& gammas) {
  const int n = static_cast<int>(gammas.size());
  Eigen::MatrixXcd prod = Eigen::MatrixXcd::Identity(gammas[0].rows(), gammas[0].cols());
  for (const auto& g : gammas) prod = prod * g;
  cxd phase = 1.0;
  for (int k = 0; k < (n + 1) / 2; ++k) phase *= cxd(0, 1);
  return phase * prod;
}

}  // namespace

CliffordRep build_rep(int n) {
  if (n < 1 || n > 3) throw std::invalid_argument("build_rep: dimension must be 1, 2 or 3");
  CliffordRep rep;
  rep.n = n;
  if (n == 1) {
    Eigen::MatrixXcd g(1, 1);
    g << cxd(0, 1);
    rep.gammas = {g};
  } else {
    rep.gammas = {cxd(0, 1) * pauli(1), cxd(0, 1) * pauli(2)};
    if (n == 3) rep.gammas.push_back(cxd(0, 1) * pauli(3));
  }
  rep.omega = volume_element(rep.gammas);
  if (n == 3 && (rep.omega + Eigen::MatrixXcd::Identity(2, 2)).norm() < 1e-12) {
    // Pin the orientation convention omega_3 = +Id by flipping one generator.
    rep.gammas[2] *= -1.0;
    rep.omega = volume_element(rep.gammas);
  }
  return rep;
}

Eigen::MatrixXcd gamma_two_form(const CliffordRep& rep, const Eigen::MatrixXd& coeffs) {
  if (coeffs.rows() != rep.n || coeffs.cols() != rep.n)
    throw std::invalid_argument("gamma_two_form: coefficient table must be n x n");
  const double scale = 1.0 + coeffs.cwiseAbs().maxCoeff();
  if ((coeffs + coeffs.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale)
    throw std::invalid_argument("gamma_two_form: coefficients must be antisymmetric");
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(rep.dim(), rep.dim());
  for (int i = 0; i < rep.n; ++i)
    for (int j = i + 1; j < rep.n; ++j)
      out += coeffs(i, j) * (rep.gammas[i] * rep.gammas[j]);
  return out;
}

SplitProjectors split_even_odd(const CliffordRep& total_rep) {
  if (total_rep.n != 2)
    throw std::invalid_argument("split_even_odd: only the 2-dimensional total rep is supported");
  // nu = i gamma(e_1); vertical e_0 is the last generator by convention.
  const Eigen::MatrixXcd nu = cxd(0, 1) * total_rep.gammas[0];
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(2, 2);
  if ((nu * nu - id).cwiseAbs().maxCoeff() > 1e-13)
    throw std::invalid_argument("split_even_odd: nu does not square to the identity");
  SplitProjectors split;
  split.p_plus = 0.5 * (id + nu);
  split.p_minus = 0.5 * (id - nu);
  split.basis = Eigen::MatrixXcd(2, 2);
  for (int which = 0; which < 2; ++which) {
    const Eigen::MatrixXcd& p = which == 0 ? split.p_plus : split.p_minus;
    // Rank-1 projector: extract a unit column with a deterministic phase.
    Eigen::VectorXcd v = p.col(0);
    if (v.norm() < 0.5) v = p.col(1);
    v.normalize();
    int pivot = 0;
    if (std::abs(v(1)) > std::abs(v(0))) pivot = 1;
    v *= std::abs(v(pivot)) / v(pivot);
    split.basis.col(which) = v;
  }
  return split;
}

std::vector<std::string> check_invariants(const CliffordRep& rep) {
  std::vector<std::string> violations;
  const int d = rep.dim();
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(d, d);
  double anti = 0.0;
  for (int i = 0; i < rep.n; ++i)
    for (int j = 0; j < rep.n; ++j) {
      const Eigen::MatrixXcd r =
          rep.gammas[i] * rep.gammas[j] + rep.gammas[j] * rep.gammas[i] + (i == j ? 2.0 : 0.0) * id;
      anti = std::max(anti, r.cwiseAbs().maxCoeff());
    }
  if (anti > 1e-14) violations.push_back("anticommutation");
  for (const auto& g : rep.gammas)
    if ((g + g.adjoint()).cwiseAbs().maxCoeff() > 1e-14) {
      violations.push_back("skew_hermitian");
      break;
    }
  if ((rep.omega * rep.omega - id).cwiseAbs().maxCoeff() > 1e-14)
    violations.push_back("omega_square");
  const Eigen::MatrixXcd vol = volume_element(rep.gammas);
  if (rep.n == 3 && (vol - id).cwiseAbs().maxCoeff() > 1e-14)
    violations.push_back("omega3_identity");
  if ((rep.omega - vol).cwiseAbs().maxCoeff() > 1e-14) violations.push_back("omega_consistency");
  return violations;
}

}  // namespace clab
