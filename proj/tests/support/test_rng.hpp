#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "weft/frames.hpp"

namespace weft_test {

using weft::Matrix;
using weft::Vec;

/// mt19937_64 with a fixed mapping to doubles, so test data is identical on
/// every platform and run.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t bits() { return gen_(); }
  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  std::size_t index(std::size_t n) { return static_cast<std::size_t>(gen_() % n); }

  Vec vector(std::size_t n, double lo = -1.0, double hi = 1.0) {
    Vec v(n);
    for (double& x : v) x = uniform(lo, hi);
    return v;
  }

 private:
  std::mt19937_64 gen_;
};

inline weft::Subspace random_subspace(Rng& rng, std::size_t ambient, std::size_t dim) {
  for (int attempt = 0; attempt < 100; ++attempt) {
    std::vector<Vec> vs;
    vs.reserve(dim);
    for (std::size_t k = 0; k < dim; ++k) vs.push_back(rng.vector(ambient));
    weft::Subspace s = weft::orthonormalize(ambient, vs);
    if (s.dim() == dim) return s;
  }
  throw std::runtime_error("random_subspace: could not draw a subspace of dim " +
                           std::to_string(dim));
}

/// Random weighted family that is a fusion frame. Weights are drawn from
/// [1, 2]: together with total dims ≥ ambient this keeps both optimal bounds
/// at 1 or above, the regime where the reported lower-bound floor
/// alpha²/(B²+D²) is actually below alpha.
inline weft::WeightedFamily random_fusion_frame(Rng& rng, std::size_t ambient,
                                                std::size_t count,
                                                std::size_t max_dim = 3) {
  std::size_t cap = std::min(max_dim, ambient);
  if (count * cap < ambient) {
    throw std::runtime_error("random_fusion_frame: dims cannot cover the space");
  }
  for (int attempt = 0; attempt < 200; ++attempt) {
    std::vector<std::size_t> dims(count);
    std::size_t total = 0;
    for (std::size_t& d : dims) {
      d = 1 + rng.index(cap);
      total += d;
    }
    if (total < ambient) continue;
    weft::WeightedFamily family(ambient);
    for (std::size_t i = 0; i < count; ++i) {
      family.add(random_subspace(rng, ambient, dims[i]), rng.uniform(1.0, 2.0));
    }
    if (weft::fusion_bounds(family).is_frame) return family;
  }
  throw std::runtime_error("random_fusion_frame: no frame after 200 attempts");
}

/// Axis-aligned family; often fails to span, which exercises non-woven and
/// non-frame paths.
inline weft::WeightedFamily random_axis_family(Rng& rng, std::size_t ambient,
                                               std::size_t count) {
  weft::WeightedFamily family(ambient);
  for (std::size_t i = 0; i < count; ++i) {
    std::size_t dim = 1 + rng.index(std::min<std::size_t>(2, ambient));
    Matrix basis(ambient, dim);
    std::size_t first = rng.index(ambient);
    basis(first, 0) = 1.0;
    if (dim == 2) {
      std::size_t second = (first + 1 + rng.index(ambient - 1)) % ambient;
      basis(second, 1) = 1.0;
    }
    family.add(weft::Subspace::from_basis(std::move(basis)), rng.uniform(1.0, 2.0));
  }
  return family;
}

/// Local spanning systems: each group holds the subspace basis plus 1–3 (by
/// default) random in-subspace combinations, so every group is a frame for
/// its subspace with lower bound ≥ 1.
inline std::vector<std::vector<Vec>> random_local_vectors(Rng& rng,
                                                          const weft::WeightedFamily& family,
                                                          std::size_t min_extra = 1,
                                                          std::size_t max_extra = 3) {
  std::vector<std::vector<Vec>> out;
  out.reserve(family.size());
  for (std::size_t i = 0; i < family.size(); ++i) {
    const weft::Subspace& s = family.subspace(i);
    std::vector<Vec> group;
    for (std::size_t j = 0; j < s.basis().cols(); ++j) group.push_back(s.basis().column(j));
    std::size_t extra = min_extra + rng.index(max_extra - min_extra + 1);
    for (std::size_t e = 0; e < extra; ++e) {
      group.push_back(s.basis().apply(rng.vector(s.dim())));
    }
    out.push_back(std::move(group));
  }
  return out;
}

/// Partition of a random orthonormal basis of R^ambient into `parts`
/// consecutive column groups, unit weights. Against itself this weaves into
/// an exact orthonormal fusion basis for every pattern.
inline weft::WeightedFamily orthogonal_splitting(Rng& rng, std::size_t ambient,
                                                 std::size_t parts) {
  if (parts == 0 || parts > ambient) {
    throw std::runtime_error("orthogonal_splitting: parts must be in [1, ambient]");
  }
  weft::Subspace full = random_subspace(rng, ambient, ambient);
  const Matrix& q = full.basis();

  std::vector<std::size_t> sizes(parts, 1);
  for (std::size_t left = ambient - parts; left > 0; --left) ++sizes[rng.index(parts)];

  weft::WeightedFamily family(ambient);
  std::size_t at = 0;
  for (std::size_t p = 0; p < parts; ++p) {
    Matrix basis(ambient, sizes[p]);
    for (std::size_t j = 0; j < sizes[p]; ++j) {
      basis.set_column(j, q.column(at++));
    }
    family.add(weft::Subspace::from_basis(std::move(basis)), 1.0);
  }
  return family;
}

}  // namespace weft_test
