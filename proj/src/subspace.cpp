#include "weft/subspace.hpp"

#include <cmath>

#include "weft/errors.hpp"

namespace weft {

Subspace::Subspace(std::size_t ambient_dim, Matrix basis)
    : ambient_(ambient_dim), basis_(std::move(basis)) {
  projection_ = basis_.outer_gram();
  if (basis_.cols() == 0) projection_ = Matrix(ambient_, ambient_);
}

Subspace Subspace::zero(std::size_t ambient_dim) {
  return Subspace(ambient_dim, Matrix(ambient_dim, 0));
}

Subspace Subspace::from_basis(Matrix basis) {
  basis.require_finite("subspace basis");
  const std::size_t n = basis.rows();
  const std::size_t k = basis.cols();
  if (k > n)
    throw InvalidInput("subspace basis: more columns than ambient dimension");
  if (k > 0) {
    const Matrix g = basis.gram();
    if (frobenius_distance(g, Matrix::identity(k)) > kOrthoTol)
      throw InvalidInput("subspace basis: columns are not orthonormal");
  }
  return Subspace(n, std::move(basis));
}

Vec Subspace::project(std::span<const double> v) const {
  if (v.size() != ambient_)
    throw InvalidInput("subspace project: vector length mismatch");
  return projection_.apply(v);
}

double Subspace::residual_norm(std::span<const double> v) const {
  const Vec p = project(v);
  double s = 0.0;
  for (std::size_t i = 0; i < ambient_; ++i) {
    const double d = v[i] - p[i];
    s += d * d;
  }
  return std::sqrt(s);
}

Vec Subspace::coordinates(std::span<const double> v) const {
  if (v.size() != ambient_)
    throw InvalidInput("subspace coordinates: vector length mismatch");
  return basis_.apply_transposed(v);
}

Subspace orthonormalize(std::size_t ambient_dim, const std::vector<Vec>& vectors,
                        double tol) {
  if (!(tol > 0.0))
    throw InvalidInput("orthonormalize: tolerance must be positive");
  std::vector<Vec> basis;
  for (const Vec& v : vectors) {
    if (v.size() != ambient_dim)
      throw InvalidInput("orthonormalize: vector dimension mismatch");
    if (!all_finite(v))
      throw InvalidInput("orthonormalize: non-finite vector entry");
    Vec r = v;
    // Two projection passes keep UᵀU = I down at the 1e-12 level even for
    // nearly dependent inputs.
    for (int pass = 0; pass < 2; ++pass)
      for (const Vec& u : basis) {
        const double c = dot(u, r);
        for (std::size_t i = 0; i < ambient_dim; ++i) r[i] -= c * u[i];
      }
    const double rn = norm(r);
    if (rn > tol) {
      for (double& x : r) x /= rn;
      basis.push_back(std::move(r));
    }
  }
  Matrix u(ambient_dim, basis.size());
  for (std::size_t j = 0; j < basis.size(); ++j) u.set_column(j, basis[j]);
  return Subspace::from_basis(std::move(u));
}

Matrix projection_matrix(const Subspace& s) { return s.projection(); }

}  // namespace weft
