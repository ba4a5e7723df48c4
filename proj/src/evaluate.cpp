#include "docel/evaluate.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <set>
#include <tuple>
#include <utility>

#include "json.hpp"

namespace docel {
namespace {

using ojson = nlohmann::ordered_json;

using PairSet = std::set<std::pair<std::string, std::string>>;
using Quad = std::tuple<std::string, std::string, std::string, ValueKind, std::string>;
using QuadSet = std::set<Quad>;

void fill_metrics(EvalReport& r) {
  if (r.tp + r.fp > 0) r.precision = double(r.tp) / double(r.tp + r.fp);
  if (r.tp + r.fn > 0) r.recall = double(r.tp) / double(r.tp + r.fn);
  if (r.precision && r.recall) {
    double p = *r.precision, q = *r.recall;
    r.f1 = (p + q == 0.0) ? 0.0 : 2.0 * p * q / (p + q);
  }
}

template <class Set>
void count_overlap(const Set& gold, const Set& pred, EvalReport& r) {
  for (const auto& x : pred) {
    if (gold.count(x)) ++r.tp;
    else ++r.fp;
  }
  for (const auto& x : gold) {
    if (!pred.count(x)) ++r.fn;
  }
}

QuadSet quads_of(const DocelLog& log, const DocelLog* registry_filter) {
  QuadSet out;
  for (const auto& [attr, table] : log.dynamic_tables) {
    if (registry_filter && !registry_filter->dynamic_tables.count(attr)) continue;
    for (const auto& row : table.rows) {
      out.emplace(attr, row.oid, row.eid, row.value.kind(), row.value.text());
    }
  }
  return out;
}

std::string format_metric(const std::optional<double>& v) {
  if (!v) return "n/a";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", *v);
  return buf;
}

}  // namespace

const char* eval_level_name(EvalLevel level) {
  return level == EvalLevel::matching ? "matching" : "assignment";
}

const char* fp_mode_name(FpMode mode) {
  switch (mode) {
    case FpMode::propagate: return "propagate-fp";
    case FpMode::no_propagate: return "no-propagate-fp";
    default: return "n/a";
  }
}

EvalReport eval_matching(const DocelLog& gold, const std::vector<Match>& predicted) {
  PairSet gold_pairs;
  for (const auto& [attr, table] : gold.dynamic_tables) gold_pairs.emplace(attr, table.otype);
  PairSet pred_pairs;
  for (const auto& m : predicted) pred_pairs.emplace(m.attr, m.otype);

  EvalReport r;
  r.level = EvalLevel::matching;
  r.mode = FpMode::not_applicable;
  count_overlap(gold_pairs, pred_pairs, r);
  fill_metrics(r);
  return r;
}

EvalReport eval_assignment(const DocelLog& gold, const DocelLog& pred, bool propagate_fp) {
  QuadSet gold_quads = quads_of(gold, nullptr);
  QuadSet pred_quads = quads_of(pred, propagate_fp ? nullptr : &gold);

  EvalReport r;
  r.level = EvalLevel::assignment;
  r.mode = propagate_fp ? FpMode::propagate : FpMode::no_propagate;
  count_overlap(gold_quads, pred_quads, r);
  fill_metrics(r);
  return r;
}

std::vector<Match> matches_from_registry(const DocelLog& log) {
  std::vector<Match> out;
  for (const auto& [attr, table] : log.dynamic_tables) {
    Match m;
    m.attr = attr;
    m.otype = table.otype;
    m.method = MatchMethod::unique_candidate;
    out.push_back(std::move(m));
  }
  return out;
}

std::string reports_to_text(const std::vector<EvalReport>& reports) {
  std::vector<std::array<std::string, 8>> cells;
  cells.push_back({"level", "mode", "tp", "fp", "fn", "precision", "recall", "f1"});
  for (const auto& r : reports) {
    cells.push_back({eval_level_name(r.level), fp_mode_name(r.mode), std::to_string(r.tp),
                     std::to_string(r.fp), std::to_string(r.fn), format_metric(r.precision),
                     format_metric(r.recall), format_metric(r.f1)});
  }
  std::array<std::size_t, 8> width{};
  for (const auto& row : cells)
    for (std::size_t i = 0; i < row.size(); ++i) width[i] = std::max(width[i], row[i].size());

  std::string out;
  for (const auto& row : cells) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += "  ";
      // Left-align the label columns, right-align the numbers.
      std::size_t pad = width[i] - row[i].size();
      if (i < 2) {
        out += row[i];
        if (i + 1 < row.size()) out.append(pad, ' ');
      } else {
        out.append(pad, ' ');
        out += row[i];
      }
    }
    out += '\n';
  }
  return out;
}

std::string reports_to_json(const std::vector<EvalReport>& reports) {
  ojson arr = ojson::array();
  for (const auto& r : reports) {
    ojson o;
    o["level"] = eval_level_name(r.level);
    o["mode"] = fp_mode_name(r.mode);
    o["tp"] = r.tp;
    o["fp"] = r.fp;
    o["fn"] = r.fn;
    o["precision"] = r.precision ? ojson(*r.precision) : ojson(nullptr);
    o["recall"] = r.recall ? ojson(*r.recall) : ojson(nullptr);
    o["f1"] = r.f1 ? ojson(*r.f1) : ojson(nullptr);
    arr.push_back(std::move(o));
  }
  return arr.dump(2) + "\n";
}

}  // namespace docel
