#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "weft/builtin.hpp"
#include "weft/lifting.hpp"

namespace weft {

/// %.17g: doubles survive a parse round-trip, and the JSON and the plain-text
/// renderings of one report print identical digits.
std::string format_double(double v);

std::string json_escape(std::string_view s);

/// Ordered scalar/array/object tree rendered either as pretty JSON or as an
/// indented key: value listing. Key order is insertion order, so output is
/// byte-deterministic.
class Report {
 public:
  static Report number(double v);
  static Report integer(std::uint64_t v);
  static Report boolean(bool v);
  static Report text(std::string v);
  static Report array();
  static Report object();

  Report& push(Report item);                  // array only
  Report& set(std::string key, Report item);  // object only

  std::string to_json() const;
  std::string to_text() const;

 private:
  enum class Kind { Number, Integer, Boolean, Text, Array, Object };
  Kind kind_ = Kind::Object;

  double num_ = 0.0;
  std::uint64_t int_ = 0;
  bool bool_ = false;
  std::string text_;
  std::vector<Report> items_;
  std::vector<std::pair<std::string, Report>> entries_;

  std::string scalar_json() const;
  std::string scalar_text() const;
  void write_json(std::string& out, int indent) const;
  void write_text(std::string& out, int indent) const;
};

/// Residuals |⟨S w, w⟩/⟨w, w⟩ − bound| for the extremal eigenvector
/// witnesses; certifies that the reported bounds are attained.
struct WitnessChecks {
  double low_residual = 0.0;
  double high_residual = 0.0;
};

WitnessChecks witness_checks(const Matrix& op, const BoundsReport& bounds);

/// Recomputation residuals for the reported weaving extrema and the derived
/// constants: sharpening_gap must vanish and lemma_floor must lie below the
/// universal lower bound.
struct WeaveChecks {
  double argmin_recheck = 0.0;
  double argmax_recheck = 0.0;
  double sharpening_gap = 0.0;
  double lemma_floor_margin = 0.0;
  bool lemma_floor_ok = false;
};

WeaveChecks weave_checks(const WeightedFamily& v, const WeightedFamily& w,
                         const WeavingReport& report);

/// Largest gap between the descending spectra of TᵀT and T·Tᵀ over their
/// first min(rows, cols) entries; the nonzero parts must coincide.
double gram_duality_residual(const WeightedFamily& v, const WeightedFamily& w,
                             const WeavingPattern& pattern);

Report build_bounds_report(const WeightedFamily& v, const WeightedFamily& w);
Report build_weave_report(const WeightedFamily& v, const WeightedFamily& w,
                          const WeavingReport& report);
Report build_riesz_report(const WeightedFamily& v, const WeightedFamily& w,
                          const RieszReport& report);
Report build_lift_report(std::size_t ambient_dim, const EquivalenceReport& report);

struct DemoOutcome {
  WeavingReport report;
  bool lower_ok = false;
  bool upper_ok = false;
  bool verdict_ok = false;
  bool witness_ok = false;
  bool all_ok = false;
};

/// Runs the weaving analysis on a demo problem and compares it against the
/// problem's expectations (1e-9 slack on the bounds).
DemoOutcome evaluate_demo(const BuiltinProblem& problem, const WeaveOptions& options);

Report build_demo_report(const BuiltinProblem& problem, const DemoOutcome& outcome);

}  // namespace weft
