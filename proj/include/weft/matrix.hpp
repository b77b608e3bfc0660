#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace weft {

using Vec = std::vector<double>;

double dot(std::span<const double> a, std::span<const double> b);
double norm(std::span<const double> v);
bool all_finite(std::span<const double> v);

/// Dense row-major matrix of doubles. The single representation used for
/// projections, frame operators and synthesis blocks; everything downstream
/// stays below dimension ~64, so no attempt is made at blocking or sparsity.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0);
  Matrix(std::size_t rows, std::size_t cols, std::vector<double> entries);

  static Matrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<const double> row(std::size_t i) const {
    return {data_.data() + i * cols_, cols_};
  }
  const std::vector<double>& entries() const { return data_; }

  Matrix transposed() const;
  Matrix operator*(const Matrix& rhs) const;
  Matrix& operator+=(const Matrix& rhs);
  Matrix& operator-=(const Matrix& rhs);
  Matrix& add_scaled(const Matrix& rhs, double factor);
  Matrix& scale(double factor);

  Vec apply(std::span<const double> v) const;             // M v
  Vec apply_transposed(std::span<const double> v) const;  // Mᵀ v

  Vec column(std::size_t j) const;
  void set_column(std::size_t j, std::span<const double> v);

  Matrix gram() const;        // MᵀM
  Matrix outer_gram() const;  // MMᵀ

  double trace() const;
  double frobenius_norm() const;
  double max_abs() const;
  bool is_symmetric(double rel_tol) const;
  bool finite() const;
  void require_finite(const std::string& context) const;

  friend bool operator==(const Matrix& a, const Matrix& b) = default;

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<double> data_;
};

// m += factor · u uᵀ (u must match m's square dimension).
void add_scaled_outer(Matrix& m, std::span<const double> u, double factor);

// ‖a − b‖_F for equally shaped matrices.
double frobenius_distance(const Matrix& a, const Matrix& b);

}  // namespace weft
