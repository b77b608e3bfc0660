#include "weft/lifting.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include "weft/errors.hpp"
#include "weft/numerics.hpp"

namespace weft {

namespace {

// Relative residual above this means the vector is not in the subspace.
constexpr double kMembershipTol = 1e-10;

}  // namespace

std::pair<double, double> local_frame_bounds(const Subspace& subspace,
                                             const std::vector<Vec>& vectors) {
  std::size_t ambient = subspace.ambient_dim();
  for (std::size_t j = 0; j < vectors.size(); ++j) {
    const Vec& f = vectors[j];
    if (f.size() != ambient) {
      throw InvalidInput("local_frame_bounds: vector " + std::to_string(j) +
                         " does not match the ambient dimension");
    }
    if (!all_finite(f)) {
      throw InvalidInput("local_frame_bounds: vector " + std::to_string(j) +
                         " has non-finite entries");
    }
    if (subspace.residual_norm(f) > kMembershipTol * std::max(1.0, norm(f))) {
      throw InvalidInput("local_frame_bounds: vector " + std::to_string(j) +
                         " does not lie in the subspace");
    }
  }
  std::size_t k = subspace.dim();
  if (k == 0) {
    return {std::numeric_limits<double>::infinity(), 0.0};
  }
  Matrix op(k, k);
  for (const Vec& f : vectors) {
    add_scaled_outer(op, subspace.coordinates(f), 1.0);
  }
  Spectrum spec = symmetric_spectrum(op);
  return {spec.min(), spec.max()};
}

LocalFrameSystem::LocalFrameSystem(WeightedFamily family,
                                   std::vector<std::vector<Vec>> local_vectors)
    : family_(std::move(family)) {
  if (local_vectors.size() != family_.size()) {
    throw InvalidInput("local frame system: one vector list per subspace is required");
  }
  vectors_.reserve(local_vectors.size());
  bounds_.reserve(local_vectors.size());
  for (std::size_t i = 0; i < local_vectors.size(); ++i) {
    const Subspace& s = family_.subspace(i);
    bounds_.push_back(local_frame_bounds(s, local_vectors[i]));
    std::vector<Vec> group;
    group.reserve(local_vectors[i].size());
    for (const Vec& f : local_vectors[i]) group.push_back(s.project(f));
    vectors_.push_back(std::move(group));
  }
}

VectorFamily lift(const LocalFrameSystem& system) {
  VectorFamily out(system.ambient_dim());
  for (std::size_t i = 0; i < system.size(); ++i) {
    double weight = system.family().weight(i);
    std::vector<Vec> group = system.vectors(i);
    for (Vec& f : group) {
      for (double& x : f) x *= weight;
    }
    out.add_group(std::move(group));
  }
  return out;
}

AggregateBounds aggregate_bounds(const LocalFrameSystem& system) {
  if (system.size() == 0) return {};
  AggregateBounds agg;
  agg.inf_lower = std::numeric_limits<double>::infinity();
  agg.sup_upper = 0.0;
  for (std::size_t i = 0; i < system.size(); ++i) {
    auto [lo, hi] = system.local_bounds(i);
    agg.inf_lower = std::min(agg.inf_lower, lo);
    agg.sup_upper = std::max(agg.sup_upper, hi);
  }
  return agg;
}

EquivalenceReport equivalence_check(const LocalFrameSystem& v_system,
                                    const LocalFrameSystem& w_system, double tol,
                                    const WeaveOptions& options) {
  if (v_system.size() != w_system.size()) {
    throw InvalidInput("equivalence_check: systems must share one index set");
  }
  if (v_system.ambient_dim() != w_system.ambient_dim()) {
    throw InvalidInput("equivalence_check: systems must share the ambient space");
  }
  auto gate = [](const LocalFrameSystem& system, const char* label) {
    for (std::size_t i = 0; i < system.size(); ++i) {
      auto [lo, hi] = system.local_bounds(i);
      if (!(lo > frame_tolerance(hi))) {
        throw HypothesisViolation("equivalence_check: local system " + std::string(label) +
                                  "[" + std::to_string(i) +
                                  "] is not a frame for its subspace");
      }
    }
  };
  gate(v_system, "V");
  gate(w_system, "W");

  WeaveOptions opts = options;
  if (tol >= 0.0) opts.tol = tol;

  EquivalenceReport report;
  report.fusion_report = universal_weaving_bounds(v_system.family(), w_system.family(), opts);
  report.lifted_report = weaving_frame_bounds(lift(v_system), lift(w_system), {}, {}, opts);
  report.woven_fusion = report.fusion_report.woven;
  report.woven_vectors = report.lifted_report.woven;
  report.flags_agree = report.woven_fusion == report.woven_vectors;

  AggregateBounds va = aggregate_bounds(v_system);
  AggregateBounds wa = aggregate_bounds(w_system);
  report.alpha_agg = std::min(va.inf_lower, wa.inf_lower);
  report.beta_agg = std::max(va.sup_upper, wa.sup_upper);

  // Pattern-resolved margins when both sweeps kept their tables (the sweeps
  // share options, so the tables cover the same pattern list); otherwise the
  // universal bounds give the same inequalities after taking minima.
  double lower_margin = std::numeric_limits<double>::infinity();
  double upper_margin = std::numeric_limits<double>::infinity();
  const auto& fusion_table = report.fusion_report.per_pattern;
  const auto& lifted_table = report.lifted_report.per_pattern;
  if (fusion_table && lifted_table && fusion_table->size() == lifted_table->size()) {
    for (std::size_t s = 0; s < fusion_table->size(); ++s) {
      lower_margin = std::min(
          lower_margin, (*lifted_table)[s].lower - report.alpha_agg * (*fusion_table)[s].lower);
      upper_margin = std::min(
          upper_margin, report.beta_agg * (*fusion_table)[s].upper - (*lifted_table)[s].upper);
    }
  } else {
    lower_margin = report.lifted_report.universal_lower -
                   report.alpha_agg * report.fusion_report.universal_lower;
    upper_margin = report.beta_agg * report.fusion_report.universal_upper -
                   report.lifted_report.universal_upper;
  }
  report.sandwich_lower_margin = lower_margin;
  report.sandwich_upper_margin = upper_margin;
  double slack =
      1e-9 * std::max(1.0, report.beta_agg * report.fusion_report.universal_upper);
  report.sandwich_lower_ok = lower_margin >= -slack;
  report.sandwich_upper_ok = upper_margin >= -slack;
  return report;
}

}  // namespace weft
