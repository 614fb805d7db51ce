#include "clab/potentials.hpp"

#include <cmath>
#include <map>
#include <numbers>
#include <stdexcept>

#include "clab/clifford.hpp"
#include "clab/eigensolve.hpp"
#include "clab/operators.hpp"

namespace clab {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double operator_norm_2x2(const Eigen::MatrixXcd& m) {
  const Eigen::MatrixXcd g = m.adjoint() * m;
  const double tr = g.trace().real();
  const double det = (g(0, 0) * g(1, 1) - g(0, 1) * g(1, 0)).real();
  const double disc = std::max(0.0, tr * tr - 4.0 * det);
  return std::sqrt(0.5 * (tr + std::sqrt(disc)));
}

Eigen::MatrixXcd value_at(const PotentialSpec& z, double s, double y, double t) {
  Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(2, 2);
  for (const auto& term : z.terms) {
    const double phase = kTwoPi * term.fiber_mode * t;
    const cxd fiber(std::cos(phase), std::sin(phase));
    acc += fiber * term.base_s.eval(s) * term.base_y.eval(y) * term.matrix_part;
  }
  return acc;
}

int max_fiber_mode(const PotentialSpec& z) {
  int m = 0;
  for (const auto& term : z.terms) m = std::max(m, std::abs(term.fiber_mode));
  return m;
}

// Sum of kron(matrix_part, multiplication matrix) over the given terms in
// the plain basis of the model.
Eigen::MatrixXcd assemble_terms(const std::vector<PotentialTerm>& terms,
                                const BundleModel& model, int cutoff) {
  if (model.base_dim() == 1) {
    const ModeLattice base = base_lattice(model, cutoff);
    Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(2 * base.size(), 2 * base.size());
    for (const auto& term : terms)
      acc += kron(term.matrix_part, toeplitz_matrix(term.base_s, base));
    return acc;
  }
  const auto [lat_x, lat_y] = base_lattice_2d(model, cutoff);
  const int n = lat_x.size() * lat_y.size();
  Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(2 * n, 2 * n);
  for (const auto& term : terms)
    acc += kron(term.matrix_part,
                kron(toeplitz_matrix(term.base_s, lat_x), toeplitz_matrix(term.base_y, lat_y)));
  return acc;
}

}  // namespace

bool PotentialSpec::invariant() const {
  for (const auto& term : terms)
    if (term.fiber_mode != 0) return false;
  return true;
}

double hermiticity_defect(const PotentialSpec& z) {
  double worst = 0.0;
  const int grid = 8;
  const int tgrid = 4 * (max_fiber_mode(z) + 1);
  for (int is = 0; is < grid; ++is)
    for (int iy = 0; iy < grid; ++iy)
      for (int it = 0; it < tgrid; ++it) {
        const Eigen::MatrixXcd v =
            value_at(z, kTwoPi * is / grid + 0.31, kTwoPi * iy / grid + 0.17,
                     static_cast<double>(it) / tgrid + 0.05);
        worst = std::max(worst, (v - v.adjoint()).cwiseAbs().maxCoeff());
      }
  return worst;
}

void validate(const PotentialSpec& z) {
  for (const auto& term : z.terms) {
    if (term.matrix_part.rows() != 2 || term.matrix_part.cols() != 2)
      throw std::invalid_argument("potential: matrix parts act on the rank-2 spinor fiber");
    if (std::abs(term.fiber_mode) > kMaxModes)
      throw std::invalid_argument("potential: fiber mode exceeds cap");
  }
  double scale = 1.0;
  for (const auto& term : z.terms)
    scale = std::max(scale, term.base_s.sup_abs(64) * term.base_y.sup_abs(64) *
                                term.matrix_part.cwiseAbs().maxCoeff());
  if (hermiticity_defect(z) > 1e-10 * scale)
    throw std::invalid_argument(
        "potential: not pointwise Hermitian (conjugate term at -j missing?)");
}

PotentialSpec average(const PotentialSpec& z) {
  PotentialSpec out;
  for (const auto& term : z.terms)
    if (term.fiber_mode == 0) out.terms.push_back(term);
  return out;
}

Eigen::MatrixXcd assemble_v0_plain(const PotentialSpec& z, const BundleModel& model,
                                   int cutoff) {
  return assemble_terms(average(z).terms, model, cutoff);
}

Eigen::MatrixXcd restrict_v0(const PotentialSpec& z, const BundleModel& model, int cutoff) {
  if (!z.invariant())
    throw std::invalid_argument("restrict_v0: potential has non-invariant fiber modes");
  const Eigen::MatrixXcd plain = assemble_v0_plain(z, model, cutoff);
  if (model.base_dim() != 1) return plain;
  // Express in the split spinor basis used by the limit operator.
  const SplitProjectors split = split_even_odd(build_rep(2));
  const int n = static_cast<int>(plain.rows()) / 2;
  const Eigen::MatrixXcd u = kron(split.basis, Eigen::MatrixXcd::Identity(n, n));
  return u.adjoint() * plain * u;
}

std::pair<double, double> norms(const PotentialSpec& z, const BundleModel& model) {
  validate(model);
  const int sgrid = 256;
  const int ygrid = model.base_dim() == 2 ? 64 : 1;
  const int tgrid = std::max(64, 8 * (max_fiber_mode(z) + 1));

  // Coordinate derivatives of each factor.
  PotentialSpec dz_s = z, dz_y = z, dz_t = z;
  for (auto& term : dz_s.terms) term.base_s = derivative(term.base_s);
  for (auto& term : dz_y.terms) term.base_y = derivative(term.base_y);
  for (auto& term : dz_t.terms)
    term.matrix_part = cxd(0.0, kTwoPi * term.fiber_mode) * term.matrix_part;

  double sup = 0.0, sup_grad = 0.0;
  for (int is = 0; is < sgrid; ++is) {
    const double s = kTwoPi * is / sgrid;
    const double l = model.fiber_length_at(s);
    for (int iy = 0; iy < ygrid; ++iy) {
      const double y = kTwoPi * iy / ygrid;
      for (int it = 0; it < tgrid; ++it) {
        const double t = static_cast<double>(it) / tgrid;
        sup = std::max(sup, operator_norm_2x2(value_at(z, s, y, t)));
        const double gs = operator_norm_2x2(value_at(dz_s, s, y, t));
        const double gy = model.base_dim() == 2 ? operator_norm_2x2(value_at(dz_y, s, y, t)) : 0.0;
        const double gt = operator_norm_2x2(value_at(dz_t, s, y, t)) / l;
        sup_grad = std::max(sup_grad, std::sqrt(gs * gs + gy * gy + gt * gt));
      }
    }
  }
  return {sup, sup + sup_grad};
}

double v0_defect_norm(const PotentialSpec& z, const BundleModel& model, int cutoff) {
  // (Z - Z~) maps V_0 into the nonzero fiber modes; the operator norm is
  // the root of the largest eigenvalue of sum_j B_j^* B_j over the blocks
  // B_j mapping V_0 to V_j.
  std::map<int, std::vector<PotentialTerm>> by_mode;
  for (const auto& term : z.terms)
    if (term.fiber_mode != 0) by_mode[term.fiber_mode].push_back(term);
  if (by_mode.empty()) return 0.0;
  Eigen::MatrixXcd gram;
  bool first = true;
  for (const auto& [mode, terms] : by_mode) {
    const Eigen::MatrixXcd block = assemble_terms(terms, model, cutoff);
    if (first) {
      gram = block.adjoint() * block;
      first = false;
    } else {
      gram += block.adjoint() * block;
    }
  }
  const Spectrum s = eigenvalues(gram);
  return std::sqrt(std::max(0.0, s.values.back()));
}

}  // namespace clab
