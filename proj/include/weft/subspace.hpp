#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "weft/matrix.hpp"
#include "weft/numerics.hpp"

namespace weft {

/// A subspace of ℝⁿ stored as an orthonormal basis (n×k) together with its
/// cached orthogonal projection UUᵀ. The zero subspace (k = 0) is legal.
class Subspace {
 public:
  static Subspace zero(std::size_t ambient_dim);

  /// Wrap an explicit basis; columns must be orthonormal to 1e-12.
  static Subspace from_basis(Matrix basis);

  std::size_t ambient_dim() const { return ambient_; }
  std::size_t dim() const { return basis_.cols(); }
  const Matrix& basis() const { return basis_; }
  const Matrix& projection() const { return projection_; }

  Vec project(std::span<const double> v) const;

  /// ‖v − Pv‖: distance from v to the subspace.
  double residual_norm(std::span<const double> v) const;

  /// Coordinates of v in the stored basis (Uᵀv), length dim().
  Vec coordinates(std::span<const double> v) const;

 private:
  Subspace(std::size_t ambient_dim, Matrix basis);

  std::size_t ambient_ = 0;
  Matrix basis_;       // n×k, orthonormal columns
  Matrix projection_;  // n×n, basis·basisᵀ
};

/// Orthonormal basis for the span of `vectors` via modified Gram-Schmidt with
/// full re-orthogonalization. A vector joins the basis only if its residual
/// after projection exceeds `tol` (absolute). Empty input gives the zero
/// subspace.
Subspace orthonormalize(std::size_t ambient_dim, const std::vector<Vec>& vectors,
                        double tol = kRankTol);

/// The orthogonal projection matrix of a subspace (cached UUᵀ).
Matrix projection_matrix(const Subspace& s);

}  // namespace weft
