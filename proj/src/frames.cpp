#include "weft/frames.hpp"

#include <algorithm>
#include <cmath>

#include "weft/errors.hpp"
#include "weft/numerics.hpp"

namespace weft {

double frame_tolerance(double upper) { return 1e-8 * std::max(1.0, upper); }

void WeightedFamily::add(Subspace subspace, double weight) {
  if (subspace.ambient_dim() != ambient_)
    throw InvalidInput("weighted family: subspace ambient dimension mismatch");
  if (!std::isfinite(weight) || !(weight > 0.0))
    throw InvalidInput("weighted family: weight must be positive");
  subspaces_.push_back(std::move(subspace));
  weights_.push_back(weight);
}

void VectorFamily::add_group(std::vector<Vec> vectors) {
  for (const Vec& v : vectors) {
    if (v.size() != ambient_)
      throw InvalidInput("vector family: vector dimension mismatch");
    if (!all_finite(v))
      throw InvalidInput("vector family: non-finite vector entry");
  }
  groups_.push_back(std::move(vectors));
}

std::size_t VectorFamily::total_vectors() const {
  std::size_t n = 0;
  for (const auto& g : groups_) n += g.size();
  return n;
}

BoundsReport bounds_from_operator(const Matrix& op) {
  const Spectrum spec = symmetric_spectrum(op, true);
  BoundsReport r;
  if (spec.eigenvalues.empty()) return r;
  r.lower = spec.min();
  r.upper = spec.max();
  r.is_frame = r.lower > frame_tolerance(r.upper);
  r.witness_low = spec.eigenvectors->column(0);
  r.witness_high = spec.eigenvectors->column(spec.eigenvalues.size() - 1);
  return r;
}

Matrix frame_operator(const VectorFamily& family, const std::vector<double>& weights) {
  if (family.ambient_dim() == 0)
    throw InvalidInput("frame_operator: ambient dimension must be positive");
  if (!weights.empty() && weights.size() != family.size())
    throw InvalidInput("frame_operator: one weight per group required");
  Matrix s(family.ambient_dim(), family.ambient_dim());
  for (std::size_t i = 0; i < family.size(); ++i) {
    const double c = weights.empty() ? 1.0 : weights[i];
    for (const Vec& f : family.group(i)) add_scaled_outer(s, f, c * c);
  }
  return s;
}

BoundsReport frame_bounds(const VectorFamily& family, const std::vector<double>& weights) {
  return bounds_from_operator(frame_operator(family, weights));
}

Matrix fusion_frame_operator(const WeightedFamily& family) {
  Matrix s(family.ambient_dim(), family.ambient_dim());
  for (std::size_t i = 0; i < family.size(); ++i) {
    const double w = family.weight(i);
    s.add_scaled(family.subspace(i).projection(), w * w);
  }
  return s;
}

BoundsReport fusion_bounds(const WeightedFamily& family) {
  return bounds_from_operator(fusion_frame_operator(family));
}

std::vector<Vec> fusion_analysis(const WeightedFamily& family, std::span<const double> f) {
  if (f.size() != family.ambient_dim())
    throw InvalidInput("fusion_analysis: vector dimension mismatch");
  std::vector<Vec> blocks;
  blocks.reserve(family.size());
  for (std::size_t i = 0; i < family.size(); ++i) {
    Vec block = family.subspace(i).project(f);
    const double w = family.weight(i);
    for (double& x : block) x *= w;
    blocks.push_back(std::move(block));
  }
  return blocks;
}

Vec fusion_synthesis(const WeightedFamily& family, const std::vector<Vec>& blocks) {
  if (blocks.size() != family.size())
    throw InvalidInput("fusion_synthesis: one block per index required");
  Vec out(family.ambient_dim(), 0.0);
  for (std::size_t i = 0; i < family.size(); ++i) {
    const Vec p = family.subspace(i).project(blocks[i]);
    const double w = family.weight(i);
    for (std::size_t k = 0; k < out.size(); ++k) out[k] += w * p[k];
  }
  return out;
}

Vec reconstruct(const WeightedFamily& family, const std::vector<Vec>& measurements) {
  if (measurements.size() != family.size())
    throw InvalidInput("reconstruct: one measurement block per index required");
  // Re-project each block; synthesis then applies the projections again,
  // which is idempotent for clean measurements and repairs perturbed ones.
  std::vector<Vec> clean;
  clean.reserve(measurements.size());
  for (std::size_t i = 0; i < family.size(); ++i)
    clean.push_back(family.subspace(i).project(measurements[i]));
  const Vec y = fusion_synthesis(family, clean);
  try {
    return solve_spd(fusion_frame_operator(family), y);
  } catch (const NotInvertible&) {
    throw NotAFrame("reconstruct: not a fusion frame");
  }
}

}  // namespace weft
