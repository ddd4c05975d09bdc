#include "tandemq/hermitian_eigen.hpp"

#include <algorithm>
#include <cmath>

#include "tandemq/errors.hpp"

namespace tandemq {
namespace {

using cdouble = std::complex<double>;

// Reduce a Hermitian matrix (row-major, modified in place) to a real
// symmetric tridiagonal (d, e) via Householder reflections. The complex
// phases of the subdiagonal are discarded: a Hermitian tridiagonal matrix is
// diagonally unitarily similar to the real one with |e_k| off-diagonals.
void tridiagonalize(std::vector<cdouble>& a, std::size_t n, std::vector<double>& d,
                    std::vector<double>& e) {
  auto at = [&](std::size_t i, std::size_t j) -> cdouble& { return a[i * n + j]; };
  std::vector<cdouble> v(n), w(n);
  for (std::size_t k = 0; k + 2 < n; ++k) {
    double sigma2 = 0.0;
    for (std::size_t i = k + 1; i < n; ++i) sigma2 += std::norm(at(i, k));
    const double sigma = std::sqrt(sigma2);
    e[k] = sigma;
    if (sigma == 0.0) continue;

    const cdouble alpha = at(k + 1, k);
    const cdouble phase = std::abs(alpha) > 0.0 ? alpha / std::abs(alpha) : cdouble(1.0, 0.0);
    const cdouble beta = -phase * sigma;

    // Normalized Householder vector v with H = I - 2 v v*, H x = beta e1.
    double vnorm2 = 0.0;
    for (std::size_t i = k + 1; i < n; ++i) {
      v[i] = at(i, k);
      if (i == k + 1) v[i] -= beta;
      vnorm2 += std::norm(v[i]);
    }
    if (vnorm2 == 0.0) continue;
    const double inv = 1.0 / std::sqrt(vnorm2);
    for (std::size_t i = k + 1; i < n; ++i) v[i] *= inv;

    // p = A v on the trailing block; K = v* p; w = p - K v;
    // A <- A - 2 v w* - 2 w v*.
    cdouble kfac(0.0, 0.0);
    for (std::size_t i = k + 1; i < n; ++i) {
      cdouble s(0.0, 0.0);
      for (std::size_t j = k + 1; j < n; ++j) s += at(i, j) * v[j];
      w[i] = s;
      kfac += std::conj(v[i]) * s;
    }
    for (std::size_t i = k + 1; i < n; ++i) w[i] -= kfac * v[i];
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j)
        at(i, j) -= 2.0 * (v[i] * std::conj(w[j]) + w[i] * std::conj(v[j]));
    }
  }
  if (n >= 2) e[n - 2] = std::abs(at(n - 1, n - 2));
  for (std::size_t i = 0; i < n; ++i) d[i] = at(i, i).real();
}

// Implicit-shift QL iteration on a symmetric tridiagonal (values only).
void ql_implicit(std::vector<double>& d, std::vector<double>& e) {
  const std::size_t n = d.size();
  if (n <= 1) return;
  e.resize(n, 0.0);  // e[n-1] is a sentinel zero
  for (std::size_t l = 0; l < n; ++l) {
    int iter = 0;
    for (;;) {
      std::size_t m = l;
      for (; m + 1 < n; ++m) {
        const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m]) <= 1e-300 || std::abs(e[m]) <= 2.3e-16 * dd) break;
      }
      if (m == l) break;
      if (++iter > 50) fail(errc::eigen_nonconvergence, "QL iteration exceeded 50 sweeps");
      double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
      double r = std::hypot(g, 1.0);
      g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
      double s = 1.0, c = 1.0, p = 0.0;
      for (std::size_t i = m; i-- > l;) {
        double f = s * e[i];
        const double b = c * e[i];
        r = std::hypot(f, g);
        e[i + 1] = r;
        if (r == 0.0) {  // underflow recovery: split and restart this block
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
        if (i == l) {
          d[l] -= p;
          e[l] = g;
          e[m] = 0.0;
        }
      }
    }
  }
}

}  // namespace

std::vector<double> hermitian_eigenvalues(std::vector<cdouble> a, std::size_t n) {
  if (n == 0) fail(errc::bad_argument, "eigensolver needs n >= 1");
  if (a.size() != n * n) fail(errc::bad_argument, "matrix size does not match n x n");
  double scale = 1.0;
  for (const cdouble& z : a) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
      fail(errc::bad_argument, "matrix has non-finite entries");
    scale = std::max(scale, std::max(std::abs(z.real()), std::abs(z.imag())));
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      const cdouble upper = a[i * n + j];
      const cdouble lower = a[j * n + i];
      if (std::abs(upper - std::conj(lower)) > 1e-12 * scale)
        fail(errc::bad_argument, "matrix is not Hermitian within tolerance");
      const cdouble sym = 0.5 * (upper + std::conj(lower));
      a[i * n + j] = sym;
      a[j * n + i] = std::conj(sym);
    }
  }

  std::vector<double> d(n, 0.0), e(n, 0.0);
  tridiagonalize(a, n, d, e);
  ql_implicit(d, e);
  std::sort(d.begin(), d.end());
  return d;
}

double largest_hermitian_eigenvalue(std::vector<cdouble> a, std::size_t n) {
  return hermitian_eigenvalues(std::move(a), n).back();
}

}  // namespace tandemq
