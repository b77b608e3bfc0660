#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "weft/frames.hpp"
#include "weft/weaving.hpp"

namespace weft {

/// Optimal frame bounds of `vectors` as a frame for the given subspace,
/// computed in subspace coordinates. Every vector must lie in the subspace.
/// A zero subspace yields (+inf, 0): it constrains nothing.
std::pair<double, double> local_frame_bounds(const Subspace& subspace,
                                             const std::vector<Vec>& vectors);

/// A weighted subspace family together with, per index, a spanning vector
/// system for that subspace and its local frame bounds. Vectors are stored
/// projected onto their subspace; whether each local system actually is a
/// frame is checked by the consumers that require it, not at construction.
class LocalFrameSystem {
 public:
  LocalFrameSystem(WeightedFamily family, std::vector<std::vector<Vec>> local_vectors);

  std::size_t size() const { return family_.size(); }
  std::size_t ambient_dim() const { return family_.ambient_dim(); }
  const WeightedFamily& family() const { return family_; }
  const std::vector<Vec>& vectors(std::size_t i) const { return vectors_.at(i); }
  std::pair<double, double> local_bounds(std::size_t i) const { return bounds_.at(i); }

 private:
  WeightedFamily family_;
  std::vector<std::vector<Vec>> vectors_;
  std::vector<std::pair<double, double>> bounds_;
};

/// The lifted vector family {weightᵢ · f_ij}: group i holds the i-th local
/// system scaled by its subspace weight.
VectorFamily lift(const LocalFrameSystem& system);

/// inf of the local lower bounds and sup of the local upper bounds.
struct AggregateBounds {
  double inf_lower = 0.0;
  double sup_upper = 0.0;
};

AggregateBounds aggregate_bounds(const LocalFrameSystem& system);

struct EquivalenceReport {
  bool woven_fusion = false;
  bool woven_vectors = false;
  bool flags_agree = false;

  double alpha_agg = 0.0;  // min over both systems of the local lower bounds
  double beta_agg = 0.0;   // max over both systems of the local upper bounds

  // Per pattern, lifted bounds must sit inside [alpha_agg·lower, beta_agg·upper]
  // of the subspace-level bounds. Margins are the worst slack observed.
  bool sandwich_lower_ok = false;
  bool sandwich_upper_ok = false;
  double sandwich_lower_margin = 0.0;  // min of lifted_lower − alpha_agg·fusion_lower
  double sandwich_upper_margin = 0.0;  // min of beta_agg·fusion_upper − lifted_upper

  WeavingReport fusion_report;
  WeavingReport lifted_report;
};

/// Checks that subspace-level weaving and lifted vector-level weaving agree,
/// and that the lifted pattern bounds obey the aggregate sandwich. Throws
/// HypothesisViolation if some local system fails to be a frame for its
/// subspace, which the equivalence requires.
EquivalenceReport equivalence_check(const LocalFrameSystem& v_system,
                                    const LocalFrameSystem& w_system, double tol = -1.0,
                                    const WeaveOptions& options = {});

}  // namespace weft
