#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "weft/matrix.hpp"
#include "weft/subspace.hpp"

namespace weft {

/// Classification threshold: a family with optimal bounds (lower, upper) is a
/// frame when lower > 1e-8 · max(1, upper). Relative, so rescaling a family
/// cannot flip the verdict.
double frame_tolerance(double upper);

/// Indexed list of (subspace, positive weight) pairs over a shared ambient
/// dimension.
class WeightedFamily {
 public:
  explicit WeightedFamily(std::size_t ambient_dim) : ambient_(ambient_dim) {}

  void add(Subspace subspace, double weight);

  std::size_t ambient_dim() const { return ambient_; }
  std::size_t size() const { return subspaces_.size(); }
  const Subspace& subspace(std::size_t i) const { return subspaces_.at(i); }
  double weight(std::size_t i) const { return weights_.at(i); }
  const std::vector<double>& weights() const { return weights_; }

 private:
  std::size_t ambient_ = 0;
  std::vector<Subspace> subspaces_;
  std::vector<double> weights_;
};

/// Ambient vectors grouped by index; group j may be empty.
class VectorFamily {
 public:
  explicit VectorFamily(std::size_t ambient_dim) : ambient_(ambient_dim) {}

  void add_group(std::vector<Vec> vectors);

  std::size_t ambient_dim() const { return ambient_; }
  std::size_t size() const { return groups_.size(); }
  std::size_t total_vectors() const;
  const std::vector<Vec>& group(std::size_t i) const { return groups_.at(i); }

 private:
  std::size_t ambient_ = 0;
  std::vector<std::vector<Vec>> groups_;
};

/// Optimal bounds of a positive semidefinite operator's quadratic form:
/// extremal eigenvalues with unit-eigenvector witnesses.
struct BoundsReport {
  double lower = 0.0;
  double upper = 0.0;
  bool is_frame = false;
  Vec witness_low;
  Vec witness_high;
};

/// Extremal eigenvalues and witnesses of a symmetric PSD operator.
BoundsReport bounds_from_operator(const Matrix& op);

/// S = Σ cᵢ² fᵢfᵢᵀ over all vectors; cᵢ is the group's weight (unit when
/// `weights` is empty).
Matrix frame_operator(const VectorFamily& family, const std::vector<double>& weights = {});

BoundsReport frame_bounds(const VectorFamily& family, const std::vector<double>& weights = {});

/// S = Σ wᵢ² P_i.
Matrix fusion_frame_operator(const WeightedFamily& family);

BoundsReport fusion_bounds(const WeightedFamily& family);

/// Measurement blocks {wᵢ · P_i f}. Block i lies in subspace i.
std::vector<Vec> fusion_analysis(const WeightedFamily& family, std::span<const double> f);

/// Σ wᵢ P_i blockᵢ, the adjoint of analysis.
Vec fusion_synthesis(const WeightedFamily& family, const std::vector<Vec>& blocks);

/// Recover f from its measurement blocks: S⁻¹ applied to their synthesis.
/// Blocks are re-projected onto their subspaces first, so slightly perturbed
/// measurements are accepted. Throws NotAFrame when S is singular.
Vec reconstruct(const WeightedFamily& family, const std::vector<Vec>& measurements);

}  // namespace weft
