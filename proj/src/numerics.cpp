#include "weft/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "weft/errors.hpp"

namespace weft {

namespace {

double offdiagonal_norm(const Matrix& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = i + 1; j < a.cols(); ++j) s += 2.0 * a(i, j) * a(i, j);
  return std::sqrt(s);
}

// One Jacobi rotation zeroing A(p,q), accumulated into V when present.
void rotate(Matrix& a, Matrix* v, std::size_t p, std::size_t q) {
  const std::size_t n = a.rows();
  const double apq = a(p, q);
  const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
  double t;
  if (std::isfinite(theta)) {
    t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
    if (theta < 0.0) t = -t;
  } else {
    t = 1.0 / (2.0 * theta);
  }
  const double c = 1.0 / std::sqrt(t * t + 1.0);
  const double s = t * c;
  const double tau = s / (1.0 + c);

  a(p, p) -= t * apq;
  a(q, q) += t * apq;
  a(p, q) = 0.0;
  a(q, p) = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (i == p || i == q) continue;
    const double aip = a(i, p);
    const double aiq = a(i, q);
    a(i, p) = aip - s * (aiq + tau * aip);
    a(p, i) = a(i, p);
    a(i, q) = aiq + s * (aip - tau * aiq);
    a(q, i) = a(i, q);
  }
  if (v) {
    for (std::size_t i = 0; i < n; ++i) {
      const double vip = (*v)(i, p);
      const double viq = (*v)(i, q);
      (*v)(i, p) = vip - s * (viq + tau * vip);
      (*v)(i, q) = viq + s * (vip - tau * viq);
    }
  }
}

}  // namespace

Spectrum symmetric_spectrum(const Matrix& m, bool want_vectors) {
  if (m.rows() != m.cols())
    throw InvalidInput("symmetric_spectrum: matrix is not square");
  m.require_finite("symmetric_spectrum");
  if (!m.is_symmetric(1e-12))
    throw InvalidInput("symmetric_spectrum: matrix is not symmetric");

  const std::size_t n = m.rows();
  Spectrum out;
  out.eigenvalues.resize(n);
  if (n == 0) {
    if (want_vectors) out.eigenvectors = Matrix(0, 0);
    return out;
  }

  // Work on the symmetrized copy so the 1e-12 slack cannot skew results.
  Matrix a(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a(i, j) = 0.5 * (m(i, j) + m(j, i));
  Matrix vecs;
  Matrix* vp = nullptr;
  if (want_vectors) {
    vecs = Matrix::identity(n);
    vp = &vecs;
  }

  const double scale = a.frobenius_norm();
  const double target = kJacobiTol * scale;
  // Rotating on entries this small cannot move off(A) above target.
  const double skip = target / static_cast<double>(n * n);

  constexpr int kMaxSweeps = 100;
  int sweep = 0;
  for (; sweep < kMaxSweeps; ++sweep) {
    if (offdiagonal_norm(a) <= target) break;
    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q)
        if (std::abs(a(p, q)) > skip) rotate(a, vp, p, q);
  }
  if (sweep == kMaxSweeps && offdiagonal_norm(a) > target)
    throw NumericalFailure("symmetric_spectrum: Jacobi sweep did not converge");

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&a](std::size_t i, std::size_t j) { return a(i, i) < a(j, j); });
  for (std::size_t i = 0; i < n; ++i) out.eigenvalues[i] = a(order[i], order[i]);
  if (want_vectors) {
    Matrix sorted(n, n);
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t i = 0; i < n; ++i) sorted(i, j) = vecs(i, order[j]);
    out.eigenvectors = std::move(sorted);
  }
  return out;
}

Vec solve_spd(const Matrix& m, std::span<const double> b) {
  if (m.rows() != m.cols())
    throw InvalidInput("solve_spd: matrix is not square");
  if (b.size() != m.rows())
    throw InvalidInput("solve_spd: right-hand side length mismatch");
  const std::size_t n = m.rows();
  if (n == 0) return {};

  const Spectrum spec = symmetric_spectrum(m, false);
  const double lo = spec.min();
  const double hi = spec.max();
  const double scale = std::max(std::abs(lo), std::abs(hi));
  if (!(lo > 0.0) || !(lo > 1e-10 * scale))
    throw NotInvertible("solve_spd: matrix is not invertible");

  // Cholesky on the symmetrized lower triangle.
  Matrix l(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    double d = m(j, j);
    for (std::size_t k = 0; k < j; ++k) d -= l(j, k) * l(j, k);
    if (!(d > 0.0))
      throw NotInvertible("solve_spd: matrix is not invertible");
    l(j, j) = std::sqrt(d);
    for (std::size_t i = j + 1; i < n; ++i) {
      double s = 0.5 * (m(i, j) + m(j, i));
      for (std::size_t k = 0; k < j; ++k) s -= l(i, k) * l(j, k);
      l(i, j) = s / l(j, j);
    }
  }

  auto backsolve = [&l, n](std::span<const double> rhs) {
    Vec y(n);
    for (std::size_t i = 0; i < n; ++i) {
      double s = rhs[i];
      for (std::size_t k = 0; k < i; ++k) s -= l(i, k) * y[k];
      y[i] = s / l(i, i);
    }
    Vec x(n);
    for (std::size_t ii = n; ii-- > 0;) {
      double s = y[ii];
      for (std::size_t k = ii + 1; k < n; ++k) s -= l(k, ii) * x[k];
      x[ii] = s / l(ii, ii);
    }
    return x;
  };

  Vec x = backsolve(b);
  // Iterative refinement for ill-conditioned systems. The fixed step cap and
  // the monotone stopping rule keep the solve deterministic.
  double prev_residual = std::numeric_limits<double>::infinity();
  for (int step = 0; step < 3; ++step) {
    const Vec mx = m.apply(x);
    Vec r(n);
    double rn = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      r[i] = b[i] - mx[i];
      rn += r[i] * r[i];
    }
    rn = std::sqrt(rn);
    if (!(rn < prev_residual)) break;
    prev_residual = rn;
    const Vec dx = backsolve(r);
    for (std::size_t i = 0; i < n; ++i) x[i] += dx[i];
  }
  return x;
}

double operator_norm(const Matrix& m) {
  if (m.empty()) return 0.0;
  const Matrix g = (m.rows() <= m.cols()) ? m.outer_gram() : m.gram();
  const double top = symmetric_spectrum(g, false).max();
  return std::sqrt(std::max(0.0, top));
}

}  // namespace weft
