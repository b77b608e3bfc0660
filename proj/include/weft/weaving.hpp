#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "weft/frames.hpp"

namespace weft {

/// Subset σ of {0..m−1}: bit i set draws index i from the first family (V),
/// clear draws it from the second (W). Empty and full masks are legal.
class WeavingPattern {
 public:
  WeavingPattern() = default;
  WeavingPattern(std::size_t size, std::uint64_t mask);

  static WeavingPattern empty_set(std::size_t size) { return {size, 0}; }
  static WeavingPattern full_set(std::size_t size);
  static std::optional<WeavingPattern> from_bit_string(std::string_view bits);

  std::size_t size() const { return size_; }
  std::uint64_t mask() const { return mask_; }
  bool draws_first(std::size_t i) const { return (mask_ >> i) & 1; }
  WeavingPattern complement() const;

  /// Serialized form: one character per index, index 0 leftmost.
  std::string bit_string() const;

  friend bool operator==(const WeavingPattern&, const WeavingPattern&) = default;

 private:
  std::size_t size_ = 0;
  std::uint64_t mask_ = 0;
};

/// Pattern order used for all argmin/argmax tie-breaking: lexicographic on
/// the serialized bit string (index 0 leftmost, '0' < '1').
bool lex_less(std::uint64_t a, std::uint64_t b, std::size_t size);

struct WeaveOptions {
  double tol = -1.0;                    // < 0 → frame_tolerance(universal_upper)
  std::size_t pattern_cap = 20;         // exhaustive enumeration limit on m
  std::optional<std::uint64_t> sample;  // pattern sample count; enables sampling
  std::uint64_t seed = 0;               // sampling seed
  int per_pattern = -1;                 // -1 auto (emit when m < 12), 0 off, 1 on
  unsigned threads = 0;                 // 0 → hardware concurrency
};

struct PatternBounds {
  double lower = 0.0;
  double upper = 0.0;
};

/// Universal weaving bounds over the examined patterns, with the witnesses
/// and the operator-characterization constants.
struct WeavingReport {
  std::size_t index_count = 0;
  bool exhaustive = true;  // false: sampled; can refute but never certify
  std::uint64_t patterns_examined = 0;

  double universal_lower = 0.0;
  double universal_upper = 0.0;
  double tol = 0.0;  // resolved threshold behind `woven`
  bool woven = false;
  WeavingPattern argmin_pattern;
  WeavingPattern argmax_pattern;

  double alpha = 0.0;        // min over σ of λ_min(S_σ); equals universal_lower
  double lemma_floor = 0.0;  // alpha² / (B² + D²)
  double upper_v = 0.0;      // B: optimal upper bound of the first family
  double upper_w = 0.0;      // D: optimal upper bound of the second family

  /// Per-pattern extremal eigenvalues indexed by mask (exhaustive runs only).
  std::optional<std::vector<PatternBounds>> per_pattern;
};

/// S_σ = Σ_{i∈σ} vᵢ² P_{V_i} + Σ_{i∉σ} wᵢ² P_{W_i}.
Matrix woven_operator(const WeightedFamily& v, const WeightedFamily& w,
                      const WeavingPattern& pattern);

/// Extremal eigenvalues of S_σ over every pattern (exhaustive up to the cap,
/// or sampled when requested).
WeavingReport universal_weaving_bounds(const WeightedFamily& v, const WeightedFamily& w,
                                       const WeaveOptions& options = {});

/// Weaving verdict: universal_lower > tol. A sampled run never certifies.
std::pair<bool, WeavingReport> is_woven(const WeightedFamily& v, const WeightedFamily& w,
                                        double tol = -1.0, const WeaveOptions& options = {});

/// Classical-frame weaving of two vector families: per pattern, the frame
/// operator draws group i's vectors (scaled by that family's weight) from F
/// on σ and from G off σ. Unit weights when omitted.
WeavingReport weaving_frame_bounds(const VectorFamily& f, const VectorFamily& g,
                                   const std::vector<double>& v_weights = {},
                                   const std::vector<double>& w_weights = {},
                                   const WeaveOptions& options = {});

/// T_σ: block i is weightᵢ · (orthonormal basis of the selected subspace);
/// satisfies T·Tᵀ = woven_operator.
Matrix woven_synthesis_matrix(const WeightedFamily& v, const WeightedFamily& w,
                              const WeavingPattern& pattern);

struct RieszPatternBounds {
  double lower = 0.0;   // λ_min(TᵀT)
  double upper = 0.0;   // λ_max(TᵀT)
  std::size_t column_count = 0;
  std::size_t rank = 0;
};

/// Extremal eigenvalues of TᵀT plus the column count and numerical rank of T.
RieszPatternBounds riesz_pattern_bounds(const WeightedFamily& v, const WeightedFamily& w,
                                        const WeavingPattern& pattern);

struct RieszReport {
  std::size_t index_count = 0;
  std::size_t ambient_dim = 0;
  bool exhaustive = true;
  std::uint64_t patterns_examined = 0;

  double universal_lower = 0.0;
  double universal_upper = 0.0;
  double tol = 0.0;
  bool is_riesz_weaving = false;

  std::size_t min_column_count = 0;
  std::size_t max_column_count = 0;
  std::size_t min_rank = 0;
  std::size_t max_rank = 0;

  /// First failing pattern (lex order); column-count/rank failures take
  /// precedence over injectivity failures.
  std::optional<WeavingPattern> failure_witness;
  std::string failure_reason;  // "column_count", "rank" or "lower"
  std::optional<RieszPatternBounds> witness_bounds;

  std::optional<std::vector<RieszPatternBounds>> per_pattern;
};

/// Riesz verdict: every pattern's synthesis matrix has full ambient rank and
/// TᵀT bounded below by tol.
std::pair<bool, RieszReport> is_woven_riesz(const WeightedFamily& v, const WeightedFamily& w,
                                            double tol = -1.0,
                                            const WeaveOptions& options = {});

struct OperatorLowerBound {
  double alpha = 0.0;        // min over σ of λ_min(S_σ)
  double lemma_floor = 0.0;  // alpha² / (B² + D²)
  double upper_v = 0.0;      // B
  double upper_w = 0.0;      // D
};

/// Pattern-independent lower bound ‖S_σ f‖ ≥ α‖f‖ together with the proof
/// floor α²/(B²+D²). Requires both families to be fusion frames.
OperatorLowerBound operator_lower_bound(const WeightedFamily& v, const WeightedFamily& w,
                                        const WeaveOptions& options = {});

}  // namespace weft
