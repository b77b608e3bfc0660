#include "weft/weaving.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <random>
#include <stdexcept>
#include <thread>

#include "weft/errors.hpp"
#include "weft/numerics.hpp"

namespace weft {

namespace {

// Masks are stored in a 64-bit word; the top bit is reserved so that
// 1 << size never overflows.
constexpr std::size_t kMaxIndexCount = 63;

void check_pattern_size(std::size_t size) {
  if (size > kMaxIndexCount) {
    throw InvalidInput("weaving pattern: index set larger than 63 is not supported");
  }
}

}  // namespace

WeavingPattern::WeavingPattern(std::size_t size, std::uint64_t mask)
    : size_(size), mask_(mask) {
  check_pattern_size(size);
  if (size < 64 && (mask >> size) != 0) {
    throw InvalidInput("weaving pattern: mask has bits outside the index set");
  }
}

WeavingPattern WeavingPattern::full_set(std::size_t size) {
  check_pattern_size(size);
  std::uint64_t mask = (size == 0) ? 0 : ((std::uint64_t{1} << size) - 1);
  return {size, mask};
}

std::optional<WeavingPattern> WeavingPattern::from_bit_string(std::string_view bits) {
  if (bits.size() > kMaxIndexCount) return std::nullopt;
  std::uint64_t mask = 0;
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] == '1') {
      mask |= std::uint64_t{1} << i;
    } else if (bits[i] != '0') {
      return std::nullopt;
    }
  }
  return WeavingPattern(bits.size(), mask);
}

WeavingPattern WeavingPattern::complement() const {
  return {size_, mask_ ^ WeavingPattern::full_set(size_).mask()};
}

std::string WeavingPattern::bit_string() const {
  std::string out(size_, '0');
  for (std::size_t i = 0; i < size_; ++i) {
    if (draws_first(i)) out[i] = '1';
  }
  return out;
}

bool lex_less(std::uint64_t a, std::uint64_t b, std::size_t size) {
  for (std::size_t i = 0; i < size; ++i) {
    unsigned bit_a = (a >> i) & 1;
    unsigned bit_b = (b >> i) & 1;
    if (bit_a != bit_b) return bit_a < bit_b;
  }
  return false;
}

namespace {

struct MinTracker {
  bool set = false;
  double value = std::numeric_limits<double>::infinity();
  std::uint64_t arg = 0;

  void offer(double v, std::uint64_t mask, std::size_t size) {
    if (!set || v < value || (v == value && lex_less(mask, arg, size))) {
      set = true;
      value = v;
      arg = mask;
    }
  }
  void merge(const MinTracker& other, std::size_t size) {
    if (other.set) offer(other.value, other.arg, size);
  }
};

struct MaxTracker {
  bool set = false;
  double value = -std::numeric_limits<double>::infinity();
  std::uint64_t arg = 0;

  void offer(double v, std::uint64_t mask, std::size_t size) {
    if (!set || v > value || (v == value && lex_less(mask, arg, size))) {
      set = true;
      value = v;
      arg = mask;
    }
  }
  void merge(const MaxTracker& other, std::size_t size) {
    if (other.set) offer(other.value, other.arg, size);
  }
};

// Lex-first pattern satisfying some predicate, independent of visit order.
struct FirstTracker {
  bool set = false;
  std::uint64_t arg = 0;

  void offer(std::uint64_t mask, std::size_t size) {
    if (!set || lex_less(mask, arg, size)) {
      set = true;
      arg = mask;
    }
  }
  void merge(const FirstTracker& other, std::size_t size) {
    if (other.set) offer(other.arg, size);
  }
};

unsigned resolve_threads(unsigned requested) {
  if (requested != 0) return requested;
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

// Splits [0, total) into at most `threads` contiguous chunks, runs `body` on
// each (concurrently when more than one) and returns the per-chunk results in
// chunk order. Exceptions from workers are rethrown after all of them join.
template <class Partial, class Body>
std::vector<Partial> run_chunked(std::uint64_t total, unsigned threads, const Body& body) {
  if (total == 0) return {};
  std::uint64_t chunk_count = std::min<std::uint64_t>(resolve_threads(threads), total);
  std::uint64_t per_chunk = (total + chunk_count - 1) / chunk_count;

  std::vector<Partial> partials(chunk_count);
  std::vector<std::exception_ptr> errors(chunk_count);
  auto run_chunk = [&](std::uint64_t c) {
    try {
      std::uint64_t lo = c * per_chunk;
      std::uint64_t hi = std::min(total, lo + per_chunk);
      partials[c] = body(lo, hi);
    } catch (...) {
      errors[c] = std::current_exception();
    }
  };

  if (chunk_count == 1) {
    run_chunk(0);
  } else {
    std::vector<std::thread> workers;
    workers.reserve(chunk_count - 1);
    for (std::uint64_t c = 1; c < chunk_count; ++c) workers.emplace_back(run_chunk, c);
    run_chunk(0);
    for (auto& w : workers) w.join();
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return partials;
}

struct SweepPlan {
  bool exhaustive = true;
  std::uint64_t total = 0;                // evaluations to run
  std::vector<std::uint64_t> samples;     // masks, sampling mode only
  bool want_table = false;
};

SweepPlan make_plan(std::size_t index_count, const WeaveOptions& options) {
  check_pattern_size(index_count);
  SweepPlan plan;
  plan.exhaustive = !options.sample.has_value();
  if (plan.exhaustive) {
    if (index_count > options.pattern_cap) {
      throw PatternCapExceeded(
          "pattern enumeration: 2^" + std::to_string(index_count) +
          " patterns exceed the cap of 2^" + std::to_string(options.pattern_cap) +
          "; raise --pattern-cap or use --sample");
    }
    plan.total = std::uint64_t{1} << index_count;
  } else {
    std::uint64_t count = *options.sample;
    if (count == 0) throw InvalidInput("pattern sampling: sample count must be positive");
    std::uint64_t all = WeavingPattern::full_set(index_count).mask();
    std::mt19937_64 gen(options.seed);
    plan.samples.resize(count);
    for (auto& mask : plan.samples) mask = gen() & all;
    plan.total = count;
  }
  plan.want_table =
      plan.exhaustive &&
      (options.per_pattern == 1 || (options.per_pattern < 0 && index_count < 12));
  return plan;
}

void check_families(const WeightedFamily& v, const WeightedFamily& w, const char* context) {
  if (v.size() != w.size()) {
    throw InvalidInput(std::string(context) + ": families must share one index set");
  }
  if (v.ambient_dim() != w.ambient_dim()) {
    throw InvalidInput(std::string(context) + ": families must share the ambient space");
  }
}

// Per-index summands of the woven operator: pattern masks pick term_v[i] or
// term_w[i] and S_σ is their sum, assembled fresh per pattern in index order
// so results do not depend on the chunking.
struct TermPair {
  std::vector<Matrix> term_v;
  std::vector<Matrix> term_w;
  std::size_t ambient = 0;
};

Matrix assemble(const TermPair& terms, std::uint64_t mask) {
  Matrix s(terms.ambient, terms.ambient);
  for (std::size_t i = 0; i < terms.term_v.size(); ++i) {
    s += ((mask >> i) & 1) ? terms.term_v[i] : terms.term_w[i];
  }
  return s;
}

struct WeavePartial {
  MinTracker low;
  MaxTracker high;
};

WeavingReport sweep_weaving(const TermPair& terms, std::size_t index_count,
                            const WeaveOptions& options) {
  SweepPlan plan = make_plan(index_count, options);

  std::vector<PatternBounds> table;
  if (plan.want_table) table.resize(plan.total);

  auto body = [&](std::uint64_t lo, std::uint64_t hi) {
    WeavePartial part;
    for (std::uint64_t idx = lo; idx < hi; ++idx) {
      std::uint64_t mask = plan.exhaustive ? idx : plan.samples[idx];
      Spectrum spec = symmetric_spectrum(assemble(terms, mask));
      part.low.offer(spec.min(), mask, index_count);
      part.high.offer(spec.max(), mask, index_count);
      if (plan.want_table) table[idx] = {spec.min(), spec.max()};
    }
    return part;
  };
  auto partials = run_chunked<WeavePartial>(plan.total, options.threads, body);

  WeavePartial merged;
  for (const auto& part : partials) {
    merged.low.merge(part.low, index_count);
    merged.high.merge(part.high, index_count);
  }

  WeavingReport report;
  report.index_count = index_count;
  report.exhaustive = plan.exhaustive;
  report.patterns_examined = plan.total;
  report.universal_lower = merged.low.set ? merged.low.value : 0.0;
  report.universal_upper = merged.high.set ? merged.high.value : 0.0;
  report.argmin_pattern = WeavingPattern(index_count, merged.low.set ? merged.low.arg : 0);
  report.argmax_pattern = WeavingPattern(index_count, merged.high.set ? merged.high.arg : 0);
  if (plan.want_table) report.per_pattern = std::move(table);
  return report;
}

// `woven` and the derived constants need the family uppers, so they are
// filled in after the sweep.
void finalize_weaving(WeavingReport& report, const WeaveOptions& options) {
  report.tol =
      options.tol >= 0.0 ? options.tol : frame_tolerance(report.universal_upper);
  report.woven = report.exhaustive && report.universal_lower > report.tol;
  report.alpha = report.universal_lower;
  double denom = report.upper_v * report.upper_v + report.upper_w * report.upper_w;
  report.lemma_floor = denom > 0.0 ? (report.alpha * report.alpha) / denom : 0.0;
}

}  // namespace

Matrix woven_operator(const WeightedFamily& v, const WeightedFamily& w,
                      const WeavingPattern& pattern) {
  check_families(v, w, "woven_operator");
  if (pattern.size() != v.size()) {
    throw InvalidInput("woven_operator: pattern size must match the index set");
  }
  Matrix s(v.ambient_dim(), v.ambient_dim());
  for (std::size_t i = 0; i < v.size(); ++i) {
    const WeightedFamily& pick = pattern.draws_first(i) ? v : w;
    s.add_scaled(pick.subspace(i).projection(), pick.weight(i) * pick.weight(i));
  }
  return s;
}

WeavingReport universal_weaving_bounds(const WeightedFamily& v, const WeightedFamily& w,
                                       const WeaveOptions& options) {
  check_families(v, w, "universal_weaving_bounds");
  TermPair terms;
  terms.ambient = v.ambient_dim();
  terms.term_v.reserve(v.size());
  terms.term_w.reserve(w.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    Matrix tv = v.subspace(i).projection();
    tv.scale(v.weight(i) * v.weight(i));
    terms.term_v.push_back(std::move(tv));
    Matrix tw = w.subspace(i).projection();
    tw.scale(w.weight(i) * w.weight(i));
    terms.term_w.push_back(std::move(tw));
  }

  WeavingReport report = sweep_weaving(terms, v.size(), options);
  report.upper_v = fusion_bounds(v).upper;
  report.upper_w = fusion_bounds(w).upper;
  finalize_weaving(report, options);
  return report;
}

std::pair<bool, WeavingReport> is_woven(const WeightedFamily& v, const WeightedFamily& w,
                                        double tol, const WeaveOptions& options) {
  WeaveOptions opts = options;
  if (tol >= 0.0) opts.tol = tol;
  WeavingReport report = universal_weaving_bounds(v, w, opts);
  return {report.woven, report};
}

WeavingReport weaving_frame_bounds(const VectorFamily& f, const VectorFamily& g,
                                   const std::vector<double>& v_weights,
                                   const std::vector<double>& w_weights,
                                   const WeaveOptions& options) {
  if (f.size() != g.size()) {
    throw InvalidInput("weaving_frame_bounds: families must share one index set");
  }
  if (f.ambient_dim() != g.ambient_dim()) {
    throw InvalidInput("weaving_frame_bounds: families must share the ambient space");
  }
  auto group_term = [](const VectorFamily& family, const std::vector<double>& weights,
                       std::size_t i) {
    double c = weights.empty() ? 1.0 : weights[i];
    Matrix term(family.ambient_dim(), family.ambient_dim());
    for (const Vec& vec : family.group(i)) add_scaled_outer(term, vec, c * c);
    return term;
  };
  if (!v_weights.empty() && v_weights.size() != f.size()) {
    throw InvalidInput("weaving_frame_bounds: first weight list does not match the family");
  }
  if (!w_weights.empty() && w_weights.size() != g.size()) {
    throw InvalidInput("weaving_frame_bounds: second weight list does not match the family");
  }

  TermPair terms;
  terms.ambient = f.ambient_dim();
  terms.term_v.reserve(f.size());
  terms.term_w.reserve(g.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    terms.term_v.push_back(group_term(f, v_weights, i));
    terms.term_w.push_back(group_term(g, w_weights, i));
  }

  WeavingReport report = sweep_weaving(terms, f.size(), options);
  report.upper_v = frame_bounds(f, v_weights).upper;
  report.upper_w = frame_bounds(g, w_weights).upper;
  finalize_weaving(report, options);
  return report;
}

Matrix woven_synthesis_matrix(const WeightedFamily& v, const WeightedFamily& w,
                              const WeavingPattern& pattern) {
  check_families(v, w, "woven_synthesis_matrix");
  if (pattern.size() != v.size()) {
    throw InvalidInput("woven_synthesis_matrix: pattern size must match the index set");
  }
  std::size_t n = v.ambient_dim();
  std::size_t cols = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    cols += pattern.draws_first(i) ? v.subspace(i).dim() : w.subspace(i).dim();
  }
  Matrix t(n, cols);
  std::size_t at = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const WeightedFamily& pick = pattern.draws_first(i) ? v : w;
    const Matrix& basis = pick.subspace(i).basis();
    double weight = pick.weight(i);
    for (std::size_t j = 0; j < basis.cols(); ++j) {
      for (std::size_t r = 0; r < n; ++r) t(r, at) = weight * basis(r, j);
      ++at;
    }
  }
  return t;
}

namespace {

std::size_t spectral_rank(const Spectrum& spec) {
  double top = spec.max();
  double threshold = kRankTol * std::max(1.0, top);
  std::size_t rank = 0;
  for (double ev : spec.eigenvalues) {
    if (ev > threshold) ++rank;
  }
  return rank;
}

RieszPatternBounds riesz_eval(const WeightedFamily& v, const WeightedFamily& w,
                              const WeavingPattern& pattern) {
  Matrix t = woven_synthesis_matrix(v, w, pattern);
  RieszPatternBounds out;
  out.column_count = t.cols();
  if (t.cols() == 0) return out;
  Spectrum spec = symmetric_spectrum(t.gram());
  out.lower = spec.min();
  out.upper = spec.max();
  out.rank = spectral_rank(spec);
  return out;
}

struct RieszPartial {
  MinTracker low;
  MaxTracker high;
  std::size_t min_count = std::numeric_limits<std::size_t>::max();
  std::size_t max_count = 0;
  std::size_t min_rank = std::numeric_limits<std::size_t>::max();
  std::size_t max_rank = 0;
  FirstTracker structural;  // column_count ≠ n or rank < n
};

}  // namespace

RieszPatternBounds riesz_pattern_bounds(const WeightedFamily& v, const WeightedFamily& w,
                                        const WeavingPattern& pattern) {
  check_families(v, w, "riesz_pattern_bounds");
  if (pattern.size() != v.size()) {
    throw InvalidInput("riesz_pattern_bounds: pattern size must match the index set");
  }
  return riesz_eval(v, w, pattern);
}

std::pair<bool, RieszReport> is_woven_riesz(const WeightedFamily& v, const WeightedFamily& w,
                                            double tol, const WeaveOptions& options) {
  check_families(v, w, "is_woven_riesz");
  WeaveOptions opts = options;
  if (tol >= 0.0) opts.tol = tol;

  std::size_t m = v.size();
  std::size_t n = v.ambient_dim();
  SweepPlan plan = make_plan(m, opts);

  std::vector<RieszPatternBounds> table;
  if (plan.want_table) table.resize(plan.total);

  auto body = [&](std::uint64_t lo, std::uint64_t hi) {
    RieszPartial part;
    for (std::uint64_t idx = lo; idx < hi; ++idx) {
      std::uint64_t mask = plan.exhaustive ? idx : plan.samples[idx];
      RieszPatternBounds pb = riesz_eval(v, w, WeavingPattern(m, mask));
      part.low.offer(pb.lower, mask, m);
      part.high.offer(pb.upper, mask, m);
      part.min_count = std::min(part.min_count, pb.column_count);
      part.max_count = std::max(part.max_count, pb.column_count);
      part.min_rank = std::min(part.min_rank, pb.rank);
      part.max_rank = std::max(part.max_rank, pb.rank);
      if (pb.column_count != n || pb.rank < n) part.structural.offer(mask, m);
      if (plan.want_table) table[idx] = pb;
    }
    return part;
  };
  auto partials = run_chunked<RieszPartial>(plan.total, opts.threads, body);

  RieszPartial merged;
  for (const auto& part : partials) {
    merged.low.merge(part.low, m);
    merged.high.merge(part.high, m);
    merged.min_count = std::min(merged.min_count, part.min_count);
    merged.max_count = std::max(merged.max_count, part.max_count);
    merged.min_rank = std::min(merged.min_rank, part.min_rank);
    merged.max_rank = std::max(merged.max_rank, part.max_rank);
    merged.structural.merge(part.structural, m);
  }

  RieszReport report;
  report.index_count = m;
  report.ambient_dim = n;
  report.exhaustive = plan.exhaustive;
  report.patterns_examined = plan.total;
  report.universal_lower = merged.low.set ? merged.low.value : 0.0;
  report.universal_upper = merged.high.set ? merged.high.value : 0.0;
  report.tol = opts.tol >= 0.0 ? opts.tol : frame_tolerance(report.universal_upper);
  report.min_column_count = merged.min_count == std::numeric_limits<std::size_t>::max()
                                ? 0
                                : merged.min_count;
  report.max_column_count = merged.max_count;
  report.min_rank =
      merged.min_rank == std::numeric_limits<std::size_t>::max() ? 0 : merged.min_rank;
  report.max_rank = merged.max_rank;
  if (plan.want_table) report.per_pattern = std::move(table);

  // Structural defects (wrong column count, rank deficiency) are reported in
  // preference to a small-but-positive lower bound; within each class the
  // lex-first pattern wins, so the witness is chunking-independent.
  if (merged.structural.set) {
    WeavingPattern witness(m, merged.structural.arg);
    report.failure_witness = witness;
    RieszPatternBounds pb = riesz_eval(v, w, witness);
    report.witness_bounds = pb;
    report.failure_reason = pb.column_count != n ? "column_count" : "rank";
  } else if (!(report.universal_lower > report.tol)) {
    WeavingPattern witness(m, merged.low.set ? merged.low.arg : 0);
    report.failure_witness = witness;
    report.witness_bounds = riesz_eval(v, w, witness);
    report.failure_reason = "lower";
  }
  report.is_riesz_weaving = report.exhaustive && !report.failure_witness.has_value();
  return {report.is_riesz_weaving, report};
}

OperatorLowerBound operator_lower_bound(const WeightedFamily& v, const WeightedFamily& w,
                                        const WeaveOptions& options) {
  check_families(v, w, "operator_lower_bound");
  if (!fusion_bounds(v).is_frame) {
    throw NotAFrame("operator_lower_bound: first family is not a fusion frame");
  }
  if (!fusion_bounds(w).is_frame) {
    throw NotAFrame("operator_lower_bound: second family is not a fusion frame");
  }
  WeavingReport report = universal_weaving_bounds(v, w, options);
  OperatorLowerBound out;
  out.alpha = report.alpha;
  out.lemma_floor = report.lemma_floor;
  out.upper_v = report.upper_v;
  out.upper_w = report.upper_w;
  return out;
}

}  // namespace weft
