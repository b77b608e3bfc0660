#include "weft/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "weft/errors.hpp"
#include "weft/numerics.hpp"

namespace weft {

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string json_escape(std::string_view s) {
  std::string out;
  out.reserve(s.size() + 2);
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof(buf), "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  return out;
}

Report Report::number(double v) {
  Report r;
  r.kind_ = Kind::Number;
  r.num_ = v;
  return r;
}

Report Report::integer(std::uint64_t v) {
  Report r;
  r.kind_ = Kind::Integer;
  r.int_ = v;
  return r;
}

Report Report::boolean(bool v) {
  Report r;
  r.kind_ = Kind::Boolean;
  r.bool_ = v;
  return r;
}

Report Report::text(std::string v) {
  Report r;
  r.kind_ = Kind::Text;
  r.text_ = std::move(v);
  return r;
}

Report Report::array() {
  Report r;
  r.kind_ = Kind::Array;
  return r;
}

Report Report::object() {
  Report r;
  r.kind_ = Kind::Object;
  return r;
}

Report& Report::push(Report item) {
  items_.push_back(std::move(item));
  return *this;
}

Report& Report::set(std::string key, Report item) {
  entries_.emplace_back(std::move(key), std::move(item));
  return *this;
}

std::string Report::scalar_json() const {
  switch (kind_) {
    case Kind::Number:
      return std::isfinite(num_) ? format_double(num_) : "null";
    case Kind::Integer: return std::to_string(int_);
    case Kind::Boolean: return bool_ ? "true" : "false";
    case Kind::Text: return "\"" + json_escape(text_) + "\"";
    default: return "null";
  }
}

std::string Report::scalar_text() const {
  switch (kind_) {
    case Kind::Number: return std::isfinite(num_) ? format_double(num_) : (num_ > 0 ? "inf" : (num_ < 0 ? "-inf" : "nan"));
    case Kind::Integer: return std::to_string(int_);
    case Kind::Boolean: return bool_ ? "true" : "false";
    case Kind::Text: return text_;
    default: return "";
  }
}

void Report::write_json(std::string& out, int indent) const {
  std::string pad(static_cast<std::size_t>(indent), ' ');
  std::string pad_in(static_cast<std::size_t>(indent) + 2, ' ');
  if (kind_ == Kind::Object) {
    if (entries_.empty()) {
      out += "{}";
      return;
    }
    out += "{\n";
    for (std::size_t i = 0; i < entries_.size(); ++i) {
      out += pad_in + "\"" + json_escape(entries_[i].first) + "\": ";
      entries_[i].second.write_json(out, indent + 2);
      out += (i + 1 < entries_.size()) ? ",\n" : "\n";
    }
    out += pad + "}";
  } else if (kind_ == Kind::Array) {
    if (items_.empty()) {
      out += "[]";
      return;
    }
    out += "[\n";
    for (std::size_t i = 0; i < items_.size(); ++i) {
      out += pad_in;
      items_[i].write_json(out, indent + 2);
      out += (i + 1 < items_.size()) ? ",\n" : "\n";
    }
    out += pad + "]";
  } else {
    out += scalar_json();
  }
}

void Report::write_text(std::string& out, int indent) const {
  std::string pad(static_cast<std::size_t>(indent), ' ');
  if (kind_ == Kind::Object) {
    for (const auto& [key, value] : entries_) {
      if (value.kind_ == Kind::Object || value.kind_ == Kind::Array) {
        out += pad + key + ":\n";
        value.write_text(out, indent + 2);
      } else {
        out += pad + key + ": " + value.scalar_text() + "\n";
      }
    }
  } else if (kind_ == Kind::Array) {
    for (const Report& item : items_) {
      if (item.kind_ == Kind::Object) {
        bool first = true;
        for (const auto& [key, value] : item.entries_) {
          std::string lead = first ? pad + "- " : pad + "  ";
          first = false;
          if (value.kind_ == Kind::Object || value.kind_ == Kind::Array) {
            out += lead + key + ":\n";
            value.write_text(out, indent + 4);
          } else {
            out += lead + key + ": " + value.scalar_text() + "\n";
          }
        }
        if (first) out += pad + "- {}\n";
      } else {
        out += pad + "- " + item.scalar_text() + "\n";
      }
    }
  } else {
    out += pad + scalar_text() + "\n";
  }
}

std::string Report::to_json() const {
  std::string out;
  write_json(out, 0);
  out += "\n";
  return out;
}

std::string Report::to_text() const {
  std::string out;
  write_text(out, 0);
  return out;
}

namespace {

double rayleigh(const Matrix& op, const Vec& w) {
  double denom = dot(w, w);
  if (!(denom > 0.0)) return 0.0;
  return dot(op.apply(w), w) / denom;
}

Report bounds_block(const BoundsReport& b) {
  Report r = Report::object();
  r.set("lower", Report::number(b.lower));
  r.set("upper", Report::number(b.upper));
  r.set("is_frame", Report::boolean(b.is_frame));
  return r;
}

}  // namespace

WitnessChecks witness_checks(const Matrix& op, const BoundsReport& bounds) {
  WitnessChecks checks;
  if (!bounds.witness_low.empty()) {
    checks.low_residual = std::abs(rayleigh(op, bounds.witness_low) - bounds.lower);
  }
  if (!bounds.witness_high.empty()) {
    checks.high_residual = std::abs(rayleigh(op, bounds.witness_high) - bounds.upper);
  }
  return checks;
}

WeaveChecks weave_checks(const WeightedFamily& v, const WeightedFamily& w,
                         const WeavingReport& report) {
  WeaveChecks checks;
  Spectrum at_min = symmetric_spectrum(woven_operator(v, w, report.argmin_pattern));
  Spectrum at_max = symmetric_spectrum(woven_operator(v, w, report.argmax_pattern));
  checks.argmin_recheck = std::abs(at_min.min() - report.universal_lower);
  checks.argmax_recheck = std::abs(at_max.max() - report.universal_upper);
  checks.sharpening_gap = report.alpha - report.universal_lower;
  checks.lemma_floor_margin = report.universal_lower - report.lemma_floor;
  checks.lemma_floor_ok =
      checks.lemma_floor_margin >= -1e-9 * std::max(1.0, report.universal_lower);
  return checks;
}

double gram_duality_residual(const WeightedFamily& v, const WeightedFamily& w,
                             const WeavingPattern& pattern) {
  Matrix t = woven_synthesis_matrix(v, w, pattern);
  if (t.rows() == 0 || t.cols() == 0) return 0.0;
  Spectrum from_gram = symmetric_spectrum(t.gram());
  Spectrum from_outer = symmetric_spectrum(t.outer_gram());
  std::vector<double> a = from_gram.eigenvalues;
  std::vector<double> b = from_outer.eigenvalues;
  std::sort(a.rbegin(), a.rend());
  std::sort(b.rbegin(), b.rend());
  std::size_t k = std::min(t.rows(), t.cols());
  double residual = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    residual = std::max(residual, std::abs(a[i] - b[i]));
  }
  return residual;
}

Report build_bounds_report(const WeightedFamily& v, const WeightedFamily& w) {
  Matrix sv = fusion_frame_operator(v);
  Matrix sw = fusion_frame_operator(w);
  BoundsReport bv = bounds_from_operator(sv);
  BoundsReport bw = bounds_from_operator(sw);
  WitnessChecks cv = witness_checks(sv, bv);
  WitnessChecks cw = witness_checks(sw, bw);

  Report r = Report::object();
  r.set("command", Report::text("bounds"));
  r.set("ambient_dim", Report::integer(v.ambient_dim()));
  r.set("index_count", Report::integer(v.size()));
  r.set("V", bounds_block(bv));
  r.set("W", bounds_block(bw));
  Report checks = Report::object();
  checks.set("v_witness_low_residual", Report::number(cv.low_residual));
  checks.set("v_witness_high_residual", Report::number(cv.high_residual));
  checks.set("w_witness_low_residual", Report::number(cw.low_residual));
  checks.set("w_witness_high_residual", Report::number(cw.high_residual));
  r.set("checks", std::move(checks));
  return r;
}

Report build_weave_report(const WeightedFamily& v, const WeightedFamily& w,
                          const WeavingReport& report) {
  WeaveChecks checks = weave_checks(v, w, report);

  Report r = Report::object();
  r.set("command", Report::text("weave"));
  r.set("ambient_dim", Report::integer(v.ambient_dim()));
  r.set("index_count", Report::integer(report.index_count));
  r.set("exhaustive", Report::boolean(report.exhaustive));
  r.set("patterns_examined", Report::integer(report.patterns_examined));
  r.set("universal_lower", Report::number(report.universal_lower));
  r.set("universal_upper", Report::number(report.universal_upper));
  r.set("tol", Report::number(report.tol));
  r.set("woven", Report::boolean(report.woven));
  r.set("argmin_pattern", Report::text(report.argmin_pattern.bit_string()));
  r.set("argmax_pattern", Report::text(report.argmax_pattern.bit_string()));
  r.set("alpha", Report::number(report.alpha));
  r.set("lemma_floor", Report::number(report.lemma_floor));
  r.set("family_upper_v", Report::number(report.upper_v));
  r.set("family_upper_w", Report::number(report.upper_w));

  Report c = Report::object();
  c.set("argmin_recheck", Report::number(checks.argmin_recheck));
  c.set("argmax_recheck", Report::number(checks.argmax_recheck));
  c.set("sharpening_gap", Report::number(checks.sharpening_gap));
  c.set("lemma_floor_margin", Report::number(checks.lemma_floor_margin));
  c.set("lemma_floor_ok", Report::boolean(checks.lemma_floor_ok));
  r.set("checks", std::move(c));

  if (report.per_pattern) {
    Report table = Report::array();
    for (std::size_t mask = 0; mask < report.per_pattern->size(); ++mask) {
      const PatternBounds& pb = (*report.per_pattern)[mask];
      Report row = Report::object();
      row.set("pattern", Report::text(WeavingPattern(report.index_count, mask).bit_string()));
      row.set("lower", Report::number(pb.lower));
      row.set("upper", Report::number(pb.upper));
      table.push(std::move(row));
    }
    r.set("per_pattern", std::move(table));
  }
  return r;
}

Report build_riesz_report(const WeightedFamily& v, const WeightedFamily& w,
                          const RieszReport& report) {
  Report r = Report::object();
  r.set("command", Report::text("riesz"));
  r.set("ambient_dim", Report::integer(report.ambient_dim));
  r.set("index_count", Report::integer(report.index_count));
  r.set("exhaustive", Report::boolean(report.exhaustive));
  r.set("patterns_examined", Report::integer(report.patterns_examined));
  r.set("universal_lower", Report::number(report.universal_lower));
  r.set("universal_upper", Report::number(report.universal_upper));
  r.set("tol", Report::number(report.tol));
  r.set("is_riesz_weaving", Report::boolean(report.is_riesz_weaving));
  r.set("min_column_count", Report::integer(report.min_column_count));
  r.set("max_column_count", Report::integer(report.max_column_count));
  r.set("min_rank", Report::integer(report.min_rank));
  r.set("max_rank", Report::integer(report.max_rank));

  if (report.failure_witness) {
    Report fw = Report::object();
    fw.set("pattern", Report::text(report.failure_witness->bit_string()));
    fw.set("reason", Report::text(report.failure_reason));
    if (report.witness_bounds) {
      fw.set("column_count", Report::integer(report.witness_bounds->column_count));
      fw.set("rank", Report::integer(report.witness_bounds->rank));
      fw.set("lower", Report::number(report.witness_bounds->lower));
      fw.set("upper", Report::number(report.witness_bounds->upper));
    }
    r.set("failure_witness", std::move(fw));
  }

  Report c = Report::object();
  WeavingPattern probe =
      report.failure_witness ? *report.failure_witness
                             : WeavingPattern::empty_set(report.index_count);
  c.set("gram_duality_residual", Report::number(gram_duality_residual(v, w, probe)));
  r.set("checks", std::move(c));

  if (report.per_pattern) {
    Report table = Report::array();
    for (std::size_t mask = 0; mask < report.per_pattern->size(); ++mask) {
      const RieszPatternBounds& pb = (*report.per_pattern)[mask];
      Report row = Report::object();
      row.set("pattern", Report::text(WeavingPattern(report.index_count, mask).bit_string()));
      row.set("lower", Report::number(pb.lower));
      row.set("upper", Report::number(pb.upper));
      row.set("column_count", Report::integer(pb.column_count));
      row.set("rank", Report::integer(pb.rank));
      table.push(std::move(row));
    }
    r.set("per_pattern", std::move(table));
  }
  return r;
}

Report build_lift_report(std::size_t ambient_dim, const EquivalenceReport& report) {
  auto side = [](const WeavingReport& wr) {
    Report s = Report::object();
    s.set("universal_lower", Report::number(wr.universal_lower));
    s.set("universal_upper", Report::number(wr.universal_upper));
    s.set("tol", Report::number(wr.tol));
    s.set("woven", Report::boolean(wr.woven));
    s.set("argmin_pattern", Report::text(wr.argmin_pattern.bit_string()));
    s.set("argmax_pattern", Report::text(wr.argmax_pattern.bit_string()));
    return s;
  };

  Report r = Report::object();
  r.set("command", Report::text("lift"));
  r.set("ambient_dim", Report::integer(ambient_dim));
  r.set("index_count", Report::integer(report.fusion_report.index_count));
  r.set("exhaustive", Report::boolean(report.fusion_report.exhaustive));
  r.set("patterns_examined", Report::integer(report.fusion_report.patterns_examined));
  r.set("woven_fusion", Report::boolean(report.woven_fusion));
  r.set("woven_vectors", Report::boolean(report.woven_vectors));
  r.set("flags_agree", Report::boolean(report.flags_agree));
  r.set("alpha_agg", Report::number(report.alpha_agg));
  r.set("beta_agg", Report::number(report.beta_agg));
  r.set("subspace_level", side(report.fusion_report));
  r.set("vector_level", side(report.lifted_report));

  Report c = Report::object();
  c.set("sandwich_lower_ok", Report::boolean(report.sandwich_lower_ok));
  c.set("sandwich_upper_ok", Report::boolean(report.sandwich_upper_ok));
  c.set("sandwich_lower_margin", Report::number(report.sandwich_lower_margin));
  c.set("sandwich_upper_margin", Report::number(report.sandwich_upper_margin));
  r.set("checks", std::move(c));
  return r;
}

DemoOutcome evaluate_demo(const BuiltinProblem& problem, const WeaveOptions& options) {
  DemoOutcome outcome;
  outcome.report = universal_weaving_bounds(problem.v_family, problem.w_family, options);
  const WeavingReport& rep = outcome.report;
  double slack = 1e-9 * std::max(1.0, std::abs(problem.expected_upper));
  outcome.lower_ok = std::abs(rep.universal_lower - problem.expected_lower) <= slack;
  outcome.upper_ok = std::abs(rep.universal_upper - problem.expected_upper) <= slack;
  outcome.verdict_ok = rep.woven == problem.expected_woven;
  outcome.witness_ok = problem.expected_witness_bits.empty() ||
                       rep.argmin_pattern.bit_string() == problem.expected_witness_bits;
  outcome.all_ok =
      outcome.lower_ok && outcome.upper_ok && outcome.verdict_ok && outcome.witness_ok;
  return outcome;
}

Report build_demo_report(const BuiltinProblem& problem, const DemoOutcome& outcome) {
  Report r = Report::object();
  r.set("command", Report::text("demo"));
  r.set("name", Report::text(problem.name));

  r.set("analysis", build_weave_report(problem.v_family, problem.w_family, outcome.report));

  Report expected = Report::object();
  expected.set("universal_lower", Report::number(problem.expected_lower));
  expected.set("universal_upper", Report::number(problem.expected_upper));
  expected.set("woven", Report::boolean(problem.expected_woven));
  if (!problem.expected_witness_bits.empty()) {
    expected.set("argmin_pattern", Report::text(problem.expected_witness_bits));
  }
  r.set("expected", std::move(expected));

  Report c = Report::object();
  c.set("lower_ok", Report::boolean(outcome.lower_ok));
  c.set("upper_ok", Report::boolean(outcome.upper_ok));
  c.set("verdict_ok", Report::boolean(outcome.verdict_ok));
  c.set("witness_ok", Report::boolean(outcome.witness_ok));
  r.set("checks", std::move(c));
  r.set("matches_expected", Report::boolean(outcome.all_ok));
  return r;
}

}  // namespace weft
