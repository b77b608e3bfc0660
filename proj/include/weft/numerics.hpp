#pragma once

#include <optional>
#include <span>
#include <vector>

#include "weft/matrix.hpp"

namespace weft {

// Numerical rank decision: absolute threshold on a post-projection residual
// norm (orthonormalization) and, scaled relatively, on eigenvalues of Gram
// matrices (rank counts).
inline constexpr double kRankTol = 1e-10;

// Orthonormality of a stored basis: ‖UᵀU − I‖_F must stay below this.
inline constexpr double kOrthoTol = 1e-12;

// Jacobi convergence: off-diagonal Frobenius norm relative to ‖M‖_F.
inline constexpr double kJacobiTol = 1e-12;

/// Full spectrum of a symmetric matrix, eigenvalues ascending. Equal values
/// keep the order the sweep produced. When requested, eigenvector columns are
/// aligned with the eigenvalues and orthonormal.
struct Spectrum {
  std::vector<double> eigenvalues;
  std::optional<Matrix> eigenvectors;

  double min() const { return eigenvalues.empty() ? 0.0 : eigenvalues.front(); }
  double max() const { return eigenvalues.empty() ? 0.0 : eigenvalues.back(); }
};

/// Cyclic Jacobi eigendecomposition. Deterministic: a fixed sweep order and
/// fixed thresholds make identical input bits produce identical output bits.
/// Rejects non-square input and asymmetry beyond 1e-12 relative.
Spectrum symmetric_spectrum(const Matrix& m, bool want_vectors = false);

/// Solve M x = b for symmetric positive definite M (Cholesky plus one
/// refinement step). Throws NotInvertible when the smallest eigenvalue is
/// not above 1e-10 · ‖M‖; this is the not-a-frame signal.
Vec solve_spd(const Matrix& m, std::span<const double> b);

/// Largest singular value, via the spectrum of the smaller Gram matrix.
double operator_norm(const Matrix& m);

}  // namespace weft
