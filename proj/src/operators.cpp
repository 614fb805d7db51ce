#include "clab/operators.hpp"

#include <cmath>
#include <sstream>

#include <json.hpp>

#include "clab/clifford.hpp"

namespace clab {

namespace {

// Absolute series tolerance scaled to the magnitude of 1/c.
double reciprocal_tol(const BundleModel& model) {
  return 1e-12 * std::max(1.0, 1.0 / model.warping.min_real(kTensorGrid));
}

Eigen::MatrixXcd derivative_matrix(const ModeLattice& lattice) {
  const auto pts = lattice.points();
  Eigen::MatrixXcd d = Eigen::MatrixXcd::Zero(pts.size(), pts.size());
  for (int i = 0; i < static_cast<int>(pts.size()); ++i) d(i, i) = cxd(0.0, pts[i]);
  return d;
}

void assert_hermitian(const Eigen::MatrixXcd& m, const char* where) {
  const double scale = std::max(m.cwiseAbs().maxCoeff(), 1e-300);
  if ((m - m.adjoint()).cwiseAbs().maxCoeff() > 1e-12 * scale)
    throw solver_error(std::string(where) + ": assembled matrix is not Hermitian");
}

std::string format_k(double k) {
  std::ostringstream os;
  os << k;
  return os.str();
}

}  // namespace

Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

ModeLattice base_lattice(const BundleModel& model, int cutoff) {
  if (model.kind == BundleKind::FormTorus) return ModeLattice(0.0, cutoff);
  return ModeLattice(model.base_spin.at(0), cutoff);
}

std::pair<ModeLattice, ModeLattice> base_lattice_2d(const BundleModel& model, int cutoff) {
  return {ModeLattice(model.base_spin.at(0), cutoff), ModeLattice(model.base_spin.at(1), cutoff)};
}

ModeOperator mode_operator(const BundleModel& model, double k, int cutoff) {
  validate(model);
  if (model.kind != BundleKind::WarpedTorus)
    throw std::invalid_argument("mode_operator: only warped-torus fiber modes are assembled");
  const ModeLattice fiber = mode_lattice(model);
  if (!fiber.contains(k)) {
    const char* name = model.fiber_spin == FiberSpin::Projectable
                           ? "projectable lattice (integers)"
                           : "nonprojectable lattice (half-integers)";
    throw std::invalid_argument("mode_operator: k=" + format_k(k) + " is not in the " + name);
  }
  const ModeLattice base = base_lattice(model, cutoff);
  const CliffordRep rep = build_rep(2);
  const Eigen::MatrixXcd& gamma_h = rep.gammas[0];  // horizontal e_1
  const Eigen::MatrixXcd& gamma_v = rep.gammas[1];  // vertical e_0

  ModeOperator op;
  op.matrix = kron(gamma_h, derivative_matrix(base));
  if (k != 0.0) {
    const FourierSeries inv_c = reciprocal_series(model.warping, reciprocal_tol(model));
    op.matrix += (k / model.epsilon) * kron(cxd(0, 1) * gamma_v, toeplitz_matrix(inv_c, base));
  }
  assert_hermitian(op.matrix, "mode_operator");
  op.k = k;
  op.k_tag = format_k(k);
  op.basis = "spinor(2) x fourier(offset=" + format_k(base.offset) + ")";
  op.model_id = model.id;
  op.reliable_radius = cutoff / 4.0;
  return op;
}

ModeOperator limit_operator(const BundleModel& model, const Eigen::MatrixXcd* zblock,
                            int cutoff) {
  validate(model);
  ModeOperator op;
  if (model.base_dim() == 1) {
    const ModeLattice base = base_lattice(model, cutoff);
    const CliffordRep rep = build_rep(2);
    const SplitProjectors split = split_even_odd(rep);
    // gamma(e_1) is diagonal in the nu-eigenbasis, giving the +/- blocks.
    const Eigen::MatrixXcd blocks = split.basis.adjoint() * rep.gammas[0] * split.basis;
    if (std::abs(blocks(0, 1)) + std::abs(blocks(1, 0)) > 1e-13)
      throw solver_error("limit_operator: split basis failed to diagonalize gamma(e_1)");
    op.matrix = kron(blocks, derivative_matrix(base));
    op.basis = "split_spinor(+,-) x fourier(offset=" + format_k(base.offset) + ")";
  } else {
    const auto [lat_x, lat_y] = base_lattice_2d(model, cutoff);
    const CliffordRep rep = build_rep(2);
    const Eigen::MatrixXcd id_x = Eigen::MatrixXcd::Identity(lat_x.size(), lat_x.size());
    const Eigen::MatrixXcd id_y = Eigen::MatrixXcd::Identity(lat_y.size(), lat_y.size());
    op.matrix = kron(rep.gammas[0], kron(derivative_matrix(lat_x), id_y)) +
                kron(rep.gammas[1], kron(id_x, derivative_matrix(lat_y)));
    op.matrix += limit_scalar_shift(model) *
                 Eigen::MatrixXcd::Identity(op.matrix.rows(), op.matrix.cols());
    op.basis = "spinor(2) x fourier2(offsets=" + format_k(lat_x.offset) + "," +
               format_k(lat_y.offset) + ")";
  }
  if (zblock != nullptr) {
    if (zblock->rows() != op.matrix.rows() || zblock->cols() != op.matrix.cols())
      throw std::invalid_argument("limit_operator: potential block dimension mismatch");
    assert_hermitian(*zblock, "limit_operator potential");
    op.matrix += *zblock;
  }
  assert_hermitian(op.matrix, "limit_operator");
  op.k = 0.0;
  op.k_tag = "limit";
  op.model_id = model.id;
  op.reliable_radius = cutoff / 4.0;
  return op;
}

double limit_scalar_shift(const BundleModel& model) {
  const double b = curvature_mean(model);
  const CliffordRep rep = build_rep(2);
  Eigen::MatrixXd coeffs = Eigen::MatrixXd::Zero(2, 2);
  coeffs(0, 1) = b;
  coeffs(1, 0) = -b;
  const Eigen::MatrixXcd shift = cxd(0, 0.25) * rep.omega * gamma_two_form(rep, coeffs);
  const cxd s = shift(0, 0);
  const Eigen::MatrixXcd defect = shift - s * Eigen::MatrixXcd::Identity(2, 2);
  if (defect.cwiseAbs().maxCoeff() > 1e-13 * (1.0 + std::abs(b)) ||
      std::abs(s.imag()) > 1e-13 * (1.0 + std::abs(b)))
    throw solver_error("limit_scalar_shift: curvature term is not a real scalar");
  return s.real();
}

ModeOperator heisenberg_v0_operator(const BundleModel& model, int cutoff) {
  validate(model);
  if (model.kind != BundleKind::HeisenbergBundle)
    throw std::invalid_argument("heisenberg_v0_operator: Heisenberg bundles only");
  const auto [lat_x, lat_y] = base_lattice_2d(model, cutoff);
  const CliffordRep rep = build_rep(3);  // total space algebra, vertical last
  const Eigen::MatrixXcd id_x = Eigen::MatrixXcd::Identity(lat_x.size(), lat_x.size());
  const Eigen::MatrixXcd id_y = Eigen::MatrixXcd::Identity(lat_y.size(), lat_y.size());

  // l F on the horizontal pair is the quotient-invariant coefficient b.
  Eigen::MatrixXd coeffs = Eigen::MatrixXd::Zero(3, 3);
  coeffs(0, 1) = model.b;
  coeffs(1, 0) = -model.b;
  const Eigen::MatrixXcd curv = -0.25 * rep.gammas[2] * gamma_two_form(rep, coeffs);

  ModeOperator op;
  op.matrix = kron(rep.gammas[0], kron(derivative_matrix(lat_x), id_y)) +
              kron(rep.gammas[1], kron(id_x, derivative_matrix(lat_y))) +
              kron(curv, kron(id_x, id_y));
  assert_hermitian(op.matrix, "heisenberg_v0_operator");
  op.k = 0.0;
  op.k_tag = "0";
  op.basis = "spinor(2) x fourier2(offsets=" + format_k(lat_x.offset) + "," +
             format_k(lat_y.offset) + ")";
  op.model_id = model.id;
  op.reliable_radius = cutoff / 4.0;
  return op;
}

ModeOperator form_mode_operator(const BundleModel& model, bool limit, int cutoff) {
  validate(model);
  if (model.kind != BundleKind::FormTorus)
    throw std::invalid_argument("form_mode_operator: form-torus models only");
  const ModeLattice base(0.0, cutoff);  // forms carry no spin offset
  const int n = base.size();
  const Eigen::MatrixXcd d = derivative_matrix(base);
  const FourierSeries log_deriv_half =
      0.5 * product(derivative(model.warping), reciprocal_series(model.warping, reciprocal_tol(model)));
  const Eigen::MatrixXcd w = toeplitz_matrix(log_deriv_half, base);

  // In the c-weighted orthonormal basis the pair (function, ds-component)
  // couples through B = -d/ds - c'/(2c).
  const Eigen::MatrixXcd b = -d - w;
  ModeOperator op;
  op.matrix = Eigen::MatrixXcd::Zero(2 * n, 2 * n);
  op.matrix.block(0, n, n, n) = b;
  op.matrix.block(n, 0, n, n) = b.adjoint();
  assert_hermitian(op.matrix, "form_mode_operator");
  op.k = 0.0;
  op.k_tag = limit ? "form_limit" : "form";
  op.basis = "(function, ds-form) x fourier(offset=0)";
  op.model_id = model.id;
  op.reliable_radius = cutoff / 4.0;
  return op;
}

ModeOperator add_potential(const ModeOperator& op, const Eigen::MatrixXcd& zblock) {
  if (zblock.rows() != op.matrix.rows() || zblock.cols() != op.matrix.cols())
    throw std::invalid_argument("add_potential: dimension mismatch");
  assert_hermitian(zblock, "add_potential");
  ModeOperator out = op;
  out.matrix += zblock;
  return out;
}

Spectrum operator_spectrum(const ModeOperator& op) {
  Spectrum s = eigenvalues(op.matrix);
  s.window = op.reliable_radius;
  s.provenance = op.model_id + ":" + op.k_tag;
  return s;
}

std::string operator_to_json(const ModeOperator& op) {
  nlohmann::json j;
  j["rows"] = op.matrix.rows();
  j["cols"] = op.matrix.cols();
  j["k"] = op.k_tag;
  j["model_id"] = op.model_id;
  j["basis"] = op.basis;
  nlohmann::json data = nlohmann::json::array();
  for (int i = 0; i < op.matrix.rows(); ++i)
    for (int jj = 0; jj < op.matrix.cols(); ++jj)
      data.push_back({op.matrix(i, jj).real(), op.matrix(i, jj).imag()});
  j["data"] = std::move(data);
  return j.dump();
}

}  // namespace clab
