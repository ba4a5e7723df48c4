#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "docel/model.hpp"

namespace docel {

enum class EvalLevel { matching, assignment };
enum class FpMode { not_applicable, propagate, no_propagate };

const char* eval_level_name(EvalLevel level);
const char* fp_mode_name(FpMode mode);

struct EvalReport {
  EvalLevel level = EvalLevel::matching;
  FpMode mode = FpMode::not_applicable;
  std::int64_t tp = 0;
  std::int64_t fp = 0;
  std::int64_t fn = 0;
  // Absent when the denominator is zero; a score is never invented.
  std::optional<double> precision;
  std::optional<double> recall;
  std::optional<double> f1;
};

// Matching level: predicted (attr, type) pairs against the gold registry.
// A right attribute with the wrong type counts as one fp and one fn.
EvalReport eval_matching(const DocelLog& gold, const std::vector<Match>& predicted);

// Assignment level: rows compared as (attr, oid, eid, value) quadruples;
// value ids play no part. With propagate_fp, every predicted row counts;
// without it, rows of attributes absent from gold's registry are dropped
// before counting.
EvalReport eval_assignment(const DocelLog& gold, const DocelLog& pred, bool propagate_fp);

// The match set implied by a log's dynamic-attribute registry.
std::vector<Match> matches_from_registry(const DocelLog& log);

std::string reports_to_text(const std::vector<EvalReport>& reports);
std::string reports_to_json(const std::vector<EvalReport>& reports);

}  // namespace docel
