#include "clab/fourier.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace clab {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kDropTol = 1e-300;  // coefficients this small are treated as absent

// Fourier coefficients of a sampled smooth periodic function via the
// trapezoidal rule (spectrally accurate). grid must be a multiple of 4.
template <typename F>
FourierSeries series_from_samples(F&& fn, int max_mode, int grid, double prune) {
  std::vector<double> samples(grid);
  for (int i = 0; i < grid; ++i) samples[i] = fn(kTwoPi * i / grid);
  FourierSeries out;
  for (int m = -max_mode; m <= max_mode; ++m) {
    cxd acc = 0.0;
    for (int i = 0; i < grid; ++i) {
      const double phase = -kTwoPi * m * i / grid;
      acc += samples[i] * cxd(std::cos(phase), std::sin(phase));
    }
    acc /= static_cast<double>(grid);
    if (std::abs(acc) > prune) out.set_coeff(m, acc);
  }
  // Samples are real, so enforce the conjugate symmetry exactly.
  FourierSeries sym;
  for (const auto& [m, v] : out.modes()) {
    if (m > 0) continue;
    if (m == 0) {
      sym.set_coeff(0, cxd(v.real(), 0.0));
    } else {
      const cxd w = 0.5 * (v + std::conj(out.coeff(-m)));
      sym.set_coeff(m, w);
      sym.set_coeff(-m, std::conj(w));
    }
  }
  sym.set_real(true);
  return sym;
}

template <typename F>
double max_pointwise_error(const FourierSeries& s, F&& reference, int grid) {
  double worst = 0.0;
  for (int i = 0; i < grid; ++i) {
    const double x = kTwoPi * i / grid;
    worst = std::max(worst, std::abs(s.eval(x) - cxd(reference(x), 0.0)));
  }
  return worst;
}

}  // namespace

ModeLattice::ModeLattice(double off, int cut) : offset(off), cutoff(cut) {
  if (cut < 1) throw std::invalid_argument("ModeLattice: cutoff must be >= 1");
  if (off != 0.0 && off != 0.5)
    throw std::invalid_argument("ModeLattice: offset must be 0 or 1/2");
  if (cut > kMaxModes) throw std::invalid_argument("ModeLattice: cutoff exceeds mode cap");
}

std::vector<double> ModeLattice::points() const {
  std::vector<double> pts;
  for (int m = -cutoff - 1; m <= cutoff + 1; ++m) {
    const double p = m + offset;
    if (std::abs(p) <= cutoff + 1e-12) pts.push_back(p);
  }
  return pts;
}

bool ModeLattice::contains(double k) const {
  const double r = k - offset;
  return std::abs(r - std::round(r)) < 1e-9 && std::abs(k) <= cutoff + 1e-12;
}

int ModeLattice::size() const { return static_cast<int>(points().size()); }

FourierSeries FourierSeries::constant(double a) {
  FourierSeries f;
  f.set_coeff(0, a);
  return f;
}

FourierSeries FourierSeries::harmonic_cos(int k, double amplitude) {
  FourierSeries f;
  f.set_coeff(k, f.coeff(k) + amplitude * 0.5);
  f.set_coeff(-k, f.coeff(-k) + amplitude * 0.5);
  return f;
}

FourierSeries FourierSeries::harmonic_sin(int k, double amplitude) {
  FourierSeries f;
  // sin(ks) = (e^{iks} - e^{-iks}) / (2i)
  f.set_coeff(k, f.coeff(k) + cxd(0.0, -0.5 * amplitude));
  f.set_coeff(-k, f.coeff(-k) + cxd(0.0, 0.5 * amplitude));
  return f;
}

cxd FourierSeries::coeff(int m) const {
  const auto it = modes_.find(m);
  return it == modes_.end() ? cxd(0.0) : it->second;
}

void FourierSeries::set_coeff(int m, cxd value) {
  if (std::abs(m) > kMaxModes)
    throw std::invalid_argument("FourierSeries: mode index exceeds cap of 512");
  if (std::abs(value) <= kDropTol) {
    modes_.erase(m);
  } else {
    modes_[m] = value;
  }
}

double FourierSeries::real_symmetry_defect() const {
  double worst = 0.0;
  for (const auto& [m, v] : modes_) worst = std::max(worst, std::abs(v - std::conj(coeff(-m))));
  return worst;
}

int FourierSeries::support() const {
  int s = 0;
  for (const auto& [m, v] : modes_) s = std::max(s, std::abs(m));
  return s;
}

cxd FourierSeries::eval(double s) const {
  cxd acc = 0.0;
  for (const auto& [m, v] : modes_) acc += v * cxd(std::cos(m * s), std::sin(m * s));
  return acc;
}

double FourierSeries::sup_abs(int grid) const {
  double worst = 0.0;
  for (int i = 0; i < grid; ++i) worst = std::max(worst, std::abs(eval(kTwoPi * i / grid)));
  return worst;
}

double FourierSeries::min_real(int grid) const {
  double best = std::numeric_limits<double>::infinity();
  for (int i = 0; i < grid; ++i) best = std::min(best, eval(kTwoPi * i / grid).real());
  return best;
}

FourierSeries FourierSeries::conjugate() const {
  FourierSeries out;
  for (const auto& [m, v] : modes_) out.set_coeff(-m, std::conj(v));
  out.set_real(real_flag_);
  return out;
}

FourierSeries& FourierSeries::operator+=(const FourierSeries& other) {
  for (const auto& [m, v] : other.modes_) set_coeff(m, coeff(m) + v);
  real_flag_ = real_flag_ && other.real_flag_;
  return *this;
}

FourierSeries& FourierSeries::operator*=(double scale) {
  for (auto& [m, v] : modes_) v *= scale;
  return *this;
}

FourierSeries operator+(FourierSeries a, const FourierSeries& b) {
  a += b;
  return a;
}

FourierSeries operator*(double scale, FourierSeries f) {
  f *= scale;
  return f;
}

FourierSeries derivative(const FourierSeries& f) {
  FourierSeries out;
  for (const auto& [m, v] : f.modes()) out.set_coeff(m, cxd(0.0, static_cast<double>(m)) * v);
  out.set_real(f.real());
  return out;
}

FourierSeries product(const FourierSeries& f, const FourierSeries& g) {
  if (f.support() + g.support() > kMaxModes)
    throw std::invalid_argument("product: result support exceeds mode cap of 512");
  FourierSeries out;
  for (const auto& [m, u] : f.modes())
    for (const auto& [k, v] : g.modes()) out.set_coeff(m + k, out.coeff(m + k) + u * v);
  out.set_real(f.real() && g.real());
  return out;
}

FourierSeries exp_series(const FourierSeries& g, double tol) {
  if (!g.real() || g.real_symmetry_defect() > 1e-12)
    throw std::invalid_argument("exp_series: exponent must be a real series");
  FourierSeries acc = FourierSeries::constant(1.0);
  FourierSeries term = FourierSeries::constant(1.0);
  const double scale = std::exp(g.sup_abs());
  for (int n = 1; n <= 512; ++n) {
    if (term.support() + g.support() > kMaxModes)
      throw std::runtime_error("exp_series: tolerance unreachable within 512 modes");
    term = (1.0 / n) * product(term, g);
    acc += term;
    double term_mass = 0.0;
    for (const auto& [m, v] : term.modes()) term_mass += std::abs(v);
    if (term_mass < tol * 1e-3 / (1.0 + scale)) break;
  }
  // Prune dust, then certify against the scalar exponential.
  FourierSeries pruned;
  for (const auto& [m, v] : acc.modes())
    if (std::abs(v) > tol * 1e-8) pruned.set_coeff(m, v);
  pruned.set_real(true);
  const int grid = std::max(64, 4 * (2 * pruned.support() + 1));
  const double err =
      max_pointwise_error(pruned, [&](double s) { return std::exp(g.eval_real(s)); }, grid);
  if (err > tol) throw std::runtime_error("exp_series: tolerance unreachable within 512 modes");
  return pruned;
}

FourierSeries reciprocal_series(const FourierSeries& f, double tol) {
  if (!f.real() || f.real_symmetry_defect() > 1e-12)
    throw std::invalid_argument("reciprocal_series: input must be a real series");
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  for (int i = 0; i < 2048; ++i) {
    const double v = f.eval_real(kTwoPi * i / 2048);
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  if (lo <= 1e-12 && hi >= -1e-12)
    throw std::invalid_argument("reciprocal_series: input vanishes on the circle");
  const auto fn = [&](double s) { return 1.0 / f.eval_real(s); };
  int grid = 256;
  while (grid <= 8192) {
    const int max_mode = std::min(kMaxModes, grid / 2 - 1);
    FourierSeries out = series_from_samples(fn, max_mode, grid, std::max(1e-16, tol * 1e-4));
    const int check = std::max(64, 4 * (2 * out.support() + 1));
    if (max_pointwise_error(out, fn, check) <= tol) return out;
    grid *= 2;
  }
  throw std::runtime_error("reciprocal_series: tolerance unreachable within 512 modes");
}

FourierSeries log_series(const FourierSeries& f, double tol) {
  if (!f.real() || f.real_symmetry_defect() > 1e-12)
    throw std::invalid_argument("log_series: input must be a real series");
  if (f.min_real() <= 0.0)
    throw std::invalid_argument("log_series: input must be positive on the circle");
  const auto fn = [&](double s) { return std::log(f.eval_real(s)); };
  int grid = 256;
  while (grid <= 8192) {
    const int max_mode = std::min(kMaxModes, grid / 2 - 1);
    FourierSeries out = series_from_samples(fn, max_mode, grid, std::max(1e-16, tol * 1e-4));
    const int check = std::max(64, 4 * (2 * out.support() + 1));
    if (max_pointwise_error(out, fn, check) <= tol) return out;
    grid *= 2;
  }
  throw std::runtime_error("log_series: tolerance unreachable within 512 modes");
}

Eigen::MatrixXcd toeplitz_matrix(const FourierSeries& f, const ModeLattice& lattice) {
  const std::vector<double> pts = lattice.points();
  const int n = static_cast<int>(pts.size());
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const int d = static_cast<int>(std::llround(pts[i] - pts[j]));
      out(i, j) = f.coeff(d);
    }
  return out;
}

}  // namespace clab
