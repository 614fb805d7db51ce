#include "clab/eigensolve.hpp"

#include <algorithm>
#include <cmath>

#include <omp.h>

namespace clab {

namespace {

constexpr int kMaxSize = 8192;
constexpr int kMaxSweeps = 50;
constexpr int kParallelThreshold = 192;

// Elementary reflector for [alpha; x] -> [beta; 0] with beta real,
// H = I - tau v v*, v = [1; x / (alpha - beta)]. Returns beta; x is scaled
// in place; tau = 0 means no reflection is needed.
double make_reflector(cxd& alpha, cxd* x, int m, cxd& tau) {
  double xnorm = 0.0;
  for (int i = 0; i < m; ++i) xnorm = std::hypot(xnorm, std::abs(x[i]));
  if (xnorm == 0.0 && alpha.imag() == 0.0) {
    tau = 0.0;
    return alpha.real();
  }
  const double beta = -std::copysign(std::hypot(std::abs(alpha), xnorm), alpha.real());
  tau = cxd((beta - alpha.real()) / beta, -alpha.imag() / beta);
  const cxd scale = 1.0 / (alpha - beta);
  for (int i = 0; i < m; ++i) x[i] *= scale;
  alpha = beta;
  return beta;
}

// Shared implementation: the two instantiations differ only in whether the
// elementwise loops carry OpenMP pragmas. All reductions (norms, dot
// products) run serially in fixed order, so both paths produce bitwise
// identical output.
template <bool Parallel>
Tridiagonal tridiagonalize_impl(const Eigen::MatrixXcd& h) {
  const int n = static_cast<int>(h.rows());
  Tridiagonal t;
  t.packed = h;
  t.tau.assign(std::max(0, n - 1), cxd(0.0));
  t.diag.assign(n, 0.0);
  t.sub.assign(std::max(0, n - 1), 0.0);
  Eigen::MatrixXcd& a = t.packed;
  std::vector<cxd> v(n), p(n), w(n);

  for (int k = 0; k + 1 < n; ++k) {
    const int m = n - k - 1;  // size of the trailing block
    cxd alpha = a(k + 1, k);
    t.sub[k] = make_reflector(alpha, m > 1 ? &a(k + 2, k) : nullptr, m - 1, t.tau[k]);
    a(k + 1, k) = alpha;
    if (t.tau[k] == 0.0) continue;

    v[0] = 1.0;
    for (int i = 1; i < m; ++i) v[i] = a(k + 1 + i, k);

    // p = tau * A22 * v, using the column walk A22(i,j) = conj(A22(j,i)).
    const cxd tau = t.tau[k];
#pragma omp parallel for schedule(static) if (Parallel)
    for (int i = 0; i < m; ++i) {
      cxd acc = 0.0;
      const cxd* col = &a(k + 1, k + 1 + i);
      for (int j = 0; j < m; ++j) acc += std::conj(col[j]) * v[j];
      p[i] = tau * acc;
    }

    cxd pv = 0.0;  // p^H v
    for (int i = 0; i < m; ++i) pv += std::conj(p[i]) * v[i];
    const cxd kappa = 0.5 * tau * pv;
    for (int i = 0; i < m; ++i) w[i] = p[i] - kappa * v[i];

    // Hermitian rank-2 update A22 -= v w* + w v*.
#pragma omp parallel for schedule(static) if (Parallel)
    for (int j = 0; j < m; ++j) {
      const cxd wj = std::conj(w[j]);
      const cxd vj = std::conj(v[j]);
      cxd* col = &a(k + 1, k + 1 + j);
      for (int i = 0; i < m; ++i) col[i] -= v[i] * wj + w[i] * vj;
    }
  }
  for (int i = 0; i < n; ++i) t.diag[i] = a(i, i).real();
  return t;
}

void check_input(const Eigen::MatrixXcd& h) {
  if (h.rows() != h.cols()) throw std::invalid_argument("eigenvalues: matrix must be square");
  if (h.rows() > kMaxSize) throw std::invalid_argument("eigenvalues: size exceeds 8192");
  const double scale = std::max(h.cwiseAbs().maxCoeff(), 1e-300);
  if ((h - h.adjoint()).cwiseAbs().maxCoeff() > 1e-12 * scale)
    throw std::invalid_argument("eigenvalues: matrix is not Hermitian");
}

Spectrum solve(const Eigen::MatrixXcd& h, bool parallel) {
  check_input(h);
  const int n = static_cast<int>(h.rows());
  Spectrum s;
  if (n == 0) return s;
  const Eigen::MatrixXcd sym = 0.5 * (h + h.adjoint());
  Tridiagonal t = parallel ? tridiagonalize_parallel(sym) : tridiagonalize_serial(sym);
  s.values = ql_eigenvalues(std::move(t.diag), std::move(t.sub));
  std::sort(s.values.begin(), s.values.end());
  return s;
}

// Solve (T - shift) x = b for a real symmetric tridiagonal T, Gaussian
// elimination with partial pivoting (dgtsv-style).
void tridiag_solve(const std::vector<double>& diag, const std::vector<double>& sub, double shift,
                   std::vector<double>& x) {
  const int n = static_cast<int>(diag.size());
  std::vector<double> dl(n, 0.0), dd(n, 0.0), du(n, 0.0), du2(n, 0.0);
  for (int i = 0; i < n; ++i) dd[i] = diag[i] - shift;
  for (int i = 0; i + 1 < n; ++i) {
    dl[i] = sub[i];
    du[i] = sub[i];
  }
  const double tiny = 1e-280;
  for (int i = 0; i + 1 < n; ++i) {
    if (std::abs(dd[i]) >= std::abs(dl[i])) {
      if (std::abs(dd[i]) < tiny) dd[i] = tiny;
      const double f = dl[i] / dd[i];
      dd[i + 1] -= f * du[i];
      x[i + 1] -= f * x[i];
      dl[i] = 0.0;
    } else {
      const double f = dd[i] / dl[i];
      std::swap(dd[i], dl[i]);
      const double tmp = du[i];
      du[i] = dd[i + 1];
      dd[i + 1] = tmp - f * dd[i + 1];
      if (i + 2 < n) {
        du2[i] = du[i + 1];
        du[i + 1] = -f * du[i + 1];
      }
      std::swap(x[i], x[i + 1]);
      x[i + 1] -= f * x[i];
      dl[i] = 0.0;
    }
  }
  if (std::abs(dd[n - 1]) < tiny) dd[n - 1] = tiny;
  for (int i = n - 1; i >= 0; --i) {
    double acc = x[i];
    if (i + 1 < n) acc -= du[i] * x[i + 1];
    if (i + 2 < n) acc -= du2[i] * x[i + 2];
    x[i] = acc / dd[i];
  }
}

}  // namespace

Tridiagonal tridiagonalize_serial(const Eigen::MatrixXcd& h) {
  return tridiagonalize_impl<false>(h);
}

Tridiagonal tridiagonalize_parallel(const Eigen::MatrixXcd& h) {
  return tridiagonalize_impl<true>(h);
}

std::vector<double> ql_eigenvalues(std::vector<double> d, std::vector<double> e) {
  const int n = static_cast<int>(d.size());
  if (n == 0) return d;
  e.push_back(0.0);
  const double eps = std::numeric_limits<double>::epsilon();
  for (int l = 0; l < n; ++l) {
    int iter = 0;
    int m;
    do {
      for (m = l; m < n - 1; ++m) {
        const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m]) <= eps * dd) break;
      }
      if (m != l) {
        if (iter++ == kMaxSweeps)
          throw solver_error("ql_eigenvalues: no convergence after 50 sweeps");
        double g = (d[l + 1] - d[l]) / (2.0 * e[l]);  // Wilkinson shift
        double r = std::hypot(g, 1.0);
        g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
        double s = 1.0, c = 1.0, p = 0.0;
        int i;
        for (i = m - 1; i >= l; --i) {
          double f = s * e[i];
          const double b = c * e[i];
          r = std::hypot(f, g);
          e[i + 1] = r;
          if (r == 0.0) {
            d[i + 1] -= p;
            e[m] = 0.0;
            break;
          }
          s = f / r;
          c = g / r;
          g = d[i + 1] - p;
          r = (d[i] - g) * s + 2.0 * c * b;
          p = s * r;
          d[i + 1] = g + p;
          g = c * r - b;
        }
        if (r == 0.0 && i >= l) continue;
        d[l] -= p;
        e[l] = g;
        e[m] = 0.0;
      }
    } while (m != l);
  }
  return d;
}

Spectrum eigenvalues(const Eigen::MatrixXcd& h) {
  const bool parallel =
      h.rows() >= kParallelThreshold && omp_get_max_threads() > 1 && !omp_in_parallel();
  return solve(h, parallel);
}

Spectrum eigenvalues_serial(const Eigen::MatrixXcd& h) { return solve(h, false); }

double residual_spot_check(const Eigen::MatrixXcd& h, int samples) {
  check_input(h);
  const int n = static_cast<int>(h.rows());
  if (n == 0) return 0.0;
  const Eigen::MatrixXcd sym = 0.5 * (h + h.adjoint());
  Tridiagonal t = tridiagonalize_serial(sym);
  std::vector<double> lambdas = ql_eigenvalues(t.diag, t.sub);
  std::sort(lambdas.begin(), lambdas.end());

  const int count = std::min(samples, n);
  double worst = 0.0;
  for (int si = 0; si < count; ++si) {
    const int idx = static_cast<int>((static_cast<long long>(si) * (n - 1)) / std::max(1, count - 1));
    const double lambda = lambdas[idx];
    // Inverse iteration on the tridiagonal with a slightly detuned shift.
    const double detune = lambda + (std::abs(lambda) + 1.0) * 64.0 * std::numeric_limits<double>::epsilon();
    std::vector<double> x(n);
    for (int i = 0; i < n; ++i) x[i] = 1.0 / std::sqrt(static_cast<double>(n));
    for (int it = 0; it < 3; ++it) {
      tridiag_solve(t.diag, t.sub, detune, x);
      double norm = 0.0;
      for (double v : x) norm += v * v;
      norm = std::sqrt(norm);
      for (double& v : x) v /= norm;
    }
    // Back-transform through the stored reflectors.
    Eigen::VectorXcd vec(n);
    for (int i = 0; i < n; ++i) vec(i) = x[i];
    for (int k = n - 2; k >= 0; --k) {
      if (t.tau[k] == 0.0) continue;
      const int m = n - k - 1;
      cxd dot = vec(k + 1);
      for (int i = 1; i < m; ++i) dot += std::conj(t.packed(k + 1 + i, k)) * vec(k + 1 + i);
      const cxd f = t.tau[k] * dot;
      vec(k + 1) -= f;
      for (int i = 1; i < m; ++i) vec(k + 1 + i) -= f * t.packed(k + 1 + i, k);
    }
    vec.normalize();
    worst = std::max(worst, (sym * vec - lambda * vec).norm());
  }
  return worst;
}

std::vector<double> Spectrum::in_window(double radius) const {
  std::vector<double> out;
  for (double v : values)
    if (std::abs(v) <= radius) out.push_back(v);
  return out;
}

double Spectrum::min_abs() const {
  double best = std::numeric_limits<double>::infinity();
  for (double v : values) best = std::min(best, std::abs(v));
  return best;
}

Spectrum window(const Spectrum& s, double radius) {
  if (radius <= 0.0) throw std::invalid_argument("window: radius must be positive");
  Spectrum out;
  out.values = s.in_window(radius);
  out.window = std::min(radius, s.window);
  out.provenance = s.provenance;
  return out;
}

namespace {

double nearest_distance(double x, const std::vector<double>& sorted) {
  const auto it = std::lower_bound(sorted.begin(), sorted.end(), x);
  double best = std::numeric_limits<double>::infinity();
  if (it != sorted.end()) best = std::min(best, std::abs(*it - x));
  if (it != sorted.begin()) best = std::min(best, std::abs(*(it - 1) - x));
  return best;
}

}  // namespace

double hausdorff_distance(const Spectrum& a, const Spectrum& b, double radius) {
  const std::vector<double> wa = a.in_window(radius);
  const std::vector<double> wb = b.in_window(radius);
  if (wa.empty() || wb.empty())
    throw std::invalid_argument("hausdorff_distance: empty windowed spectrum");
  double d = 0.0;
  for (double v : wa) d = std::max(d, nearest_distance(v, wb));
  for (double v : wb) d = std::max(d, nearest_distance(v, wa));
  return d;
}

double one_sided_distance(const Spectrum& of, const Spectrum& against, double radius) {
  const std::vector<double> w = of.in_window(radius);
  if (w.empty()) throw std::invalid_argument("one_sided_distance: window too small");
  double d = 0.0;
  for (double v : w) d = std::max(d, nearest_distance(v, against.values));
  return d;
}

double matched_distance(const Spectrum& a, const Spectrum& b, int count) {
  auto nearest_zero = [count](const Spectrum& s) {
    std::vector<double> w = s.in_window(s.window);
    if (static_cast<int>(w.size()) < count)
      throw std::invalid_argument("matched_distance: not enough eigenvalues in window");
    std::sort(w.begin(), w.end(), [](double x, double y) {
      return std::abs(x) < std::abs(y) || (std::abs(x) == std::abs(y) && x < y);
    });
    w.resize(count);
    std::sort(w.begin(), w.end());
    return w;
  };
  const std::vector<double> wa = nearest_zero(a);
  const std::vector<double> wb = nearest_zero(b);
  double d = 0.0;
  for (int i = 0; i < count; ++i) d = std::max(d, std::abs(wa[i] - wb[i]));
  return d;
}

}  // namespace clab
