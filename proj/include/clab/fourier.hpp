#ifndef CLAB_FOURIER_HPP
#define CLAB_FOURIER_HPP

#include <complex>
#include <map>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

namespace clab {

using cxd = std::complex<double>;

// Trigonometric polynomials never grow past this many modes per direction.
// Hitting the cap is an error, not a silent truncation.
inline constexpr int kMaxModes = 512;

// Index set { m + offset : m integer, |m + offset| <= cutoff }.
// offset 0 is the periodic lattice, offset 1/2 the antiperiodic one.
struct ModeLattice {
  double offset = 0.0;
  int cutoff = 1;

  ModeLattice() = default;
  ModeLattice(double off, int cut);

  std::vector<double> points() const;
  bool contains(double k) const;
  int size() const;
};

// Finite trigonometric polynomial on the circle, stored as a frequency ->
// coefficient map. real_flag records conjugate symmetry coeff(-m) ==
// conj(coeff(m)).
class FourierSeries {
 public:
  FourierSeries() = default;

  static FourierSeries constant(double a);
  static FourierSeries harmonic_cos(int k, double amplitude);
  static FourierSeries harmonic_sin(int k, double amplitude);

  cxd coeff(int m) const;
  void set_coeff(int m, cxd value);
  const std::map<int, cxd>& modes() const { return modes_; }

  bool real() const { return real_flag_; }
  void set_real(bool r) { real_flag_ = r; }
  // Largest |coefficient| violation of conjugate symmetry.
  double real_symmetry_defect() const;

  int support() const;  // max |m| with nonzero coefficient, 0 if empty
  bool empty() const { return modes_.empty(); }

  cxd eval(double s) const;
  double eval_real(double s) const { return eval(s).real(); }

  double sup_abs(int grid = 1024) const;
  double min_real(int grid = 1024) const;

  FourierSeries conjugate() const;

  FourierSeries& operator+=(const FourierSeries& other);
  FourierSeries& operator*=(double scale);

 private:
  std::map<int, cxd> modes_;
  bool real_flag_ = true;
};

FourierSeries operator+(FourierSeries a, const FourierSeries& b);
FourierSeries operator*(double scale, FourierSeries f);

// coeff'(m) = i m coeff(m); real in, real out.
FourierSeries derivative(const FourierSeries& f);

// Coefficient convolution. Support is bounded by the sum of supports.
FourierSeries product(const FourierSeries& f, const FourierSeries& g);

// Truncated expansion of exp(g) for real g, verified pointwise against
// std::exp on a 4x oversampled grid. Throws when tol is unreachable
// within the mode cap.
FourierSeries exp_series(const FourierSeries& g, double tol);

// Series of 1/f for real f bounded away from zero; quadrature based,
// verified like exp_series.
FourierSeries reciprocal_series(const FourierSeries& f, double tol);

// Series of log(f) for real positive f.
FourierSeries log_series(const FourierSeries& f, double tol);

// Galerkin matrix of multiplication by f on span{ e^{i(m+offset)s} }:
// entry (row p, col q) = coeff(p - q). Hermitian iff f is real.
Eigen::MatrixXcd toeplitz_matrix(const FourierSeries& f, const ModeLattice& lattice);

}  // namespace clab

#endif
