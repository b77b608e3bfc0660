#include "weft/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "weft/errors.hpp"

namespace weft {

double dot(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size())
    throw InvalidInput("dot: length mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm(std::span<const double> v) { return std::sqrt(dot(v, v)); }

bool all_finite(std::span<const double> v) {
  return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

Matrix::Matrix(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<double> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  if (data_.size() != rows_ * cols_)
    throw InvalidInput("matrix: entry count does not match rows x cols");
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::transposed() const {
  Matrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

Matrix Matrix::operator*(const Matrix& rhs) const {
  if (cols_ != rhs.rows_)
    throw InvalidInput("matrix multiply: inner dimension mismatch");
  Matrix out(rows_, rhs.cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t k = 0; k < cols_; ++k) {
      const double aik = (*this)(i, k);
      if (aik == 0.0) continue;
      for (std::size_t j = 0; j < rhs.cols_; ++j)
        out(i, j) += aik * rhs(k, j);
    }
  }
  return out;
}

Matrix& Matrix::operator+=(const Matrix& rhs) { return add_scaled(rhs, 1.0); }

Matrix& Matrix::operator-=(const Matrix& rhs) { return add_scaled(rhs, -1.0); }

Matrix& Matrix::add_scaled(const Matrix& rhs, double factor) {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_)
    throw InvalidInput("matrix add: shape mismatch");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += factor * rhs.data_[i];
  return *this;
}

Matrix& Matrix::scale(double factor) {
  for (double& x : data_) x *= factor;
  return *this;
}

Vec Matrix::apply(std::span<const double> v) const {
  if (v.size() != cols_)
    throw InvalidInput("matrix apply: vector length mismatch");
  Vec out(rows_, 0.0);
  for (std::size_t i = 0; i < rows_; ++i) out[i] = dot(row(i), v);
  return out;
}

Vec Matrix::apply_transposed(std::span<const double> v) const {
  if (v.size() != rows_)
    throw InvalidInput("matrix apply_transposed: vector length mismatch");
  Vec out(cols_, 0.0);
  for (std::size_t i = 0; i < rows_; ++i) {
    const double vi = v[i];
    if (vi == 0.0) continue;
    for (std::size_t j = 0; j < cols_; ++j) out[j] += vi * (*this)(i, j);
  }
  return out;
}

Vec Matrix::column(std::size_t j) const {
  Vec out(rows_);
  for (std::size_t i = 0; i < rows_; ++i) out[i] = (*this)(i, j);
  return out;
}

void Matrix::set_column(std::size_t j, std::span<const double> v) {
  if (v.size() != rows_)
    throw InvalidInput("matrix set_column: vector length mismatch");
  for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = v[i];
}

Matrix Matrix::gram() const {
  Matrix g(cols_, cols_);
  for (std::size_t i = 0; i < cols_; ++i) {
    for (std::size_t j = i; j < cols_; ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < rows_; ++k) s += (*this)(k, i) * (*this)(k, j);
      g(i, j) = s;
      g(j, i) = s;
    }
  }
  return g;
}

Matrix Matrix::outer_gram() const {
  Matrix g(rows_, rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = i; j < rows_; ++j) {
      const double s = dot(row(i), row(j));
      g(i, j) = s;
      g(j, i) = s;
    }
  }
  return g;
}

double Matrix::trace() const {
  const std::size_t n = std::min(rows_, cols_);
  double t = 0.0;
  for (std::size_t i = 0; i < n; ++i) t += (*this)(i, i);
  return t;
}

double Matrix::frobenius_norm() const {
  double s = 0.0;
  for (double x : data_) s += x * x;
  return std::sqrt(s);
}

double Matrix::max_abs() const {
  double m = 0.0;
  for (double x : data_) m = std::max(m, std::abs(x));
  return m;
}

bool Matrix::is_symmetric(double rel_tol) const {
  if (rows_ != cols_) return false;
  double off = 0.0;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = i + 1; j < cols_; ++j) {
      const double d = (*this)(i, j) - (*this)(j, i);
      off += 2.0 * d * d;
    }
  return std::sqrt(off) <= rel_tol * std::max(1.0, frobenius_norm());
}

bool Matrix::finite() const { return all_finite(data_); }

void Matrix::require_finite(const std::string& context) const {
  if (!finite())
    throw InvalidInput(context + ": non-finite matrix entry");
}

void add_scaled_outer(Matrix& m, std::span<const double> u, double factor) {
  if (m.rows() != u.size() || m.cols() != u.size())
    throw InvalidInput("add_scaled_outer: shape mismatch");
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double fi = factor * u[i];
    if (fi == 0.0) continue;
    for (std::size_t j = 0; j < u.size(); ++j) m(i, j) += fi * u[j];
  }
}

double frobenius_distance(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw InvalidInput("frobenius_distance: shape mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < a.entries().size(); ++i) {
    const double d = a.entries()[i] - b.entries()[i];
    s += d * d;
  }
  return std::sqrt(s);
}

}  // namespace weft
