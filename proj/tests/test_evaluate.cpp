#include "docel/evaluate.hpp"

#include <string>
#include <vector>

#include "docel/generate.hpp"
#include "doctest.h"
#include "json.hpp"
#include "test_support.hpp"

using docel::AttributeValue;
using docel::DocelLog;
using docel::EvalLevel;
using docel::EvalReport;
using docel::FpMode;
using docel::Match;

namespace {

DocelLog small_gold() {
  docel::O2DParams p;
  p.num_orders = 5;
  p.seed = 3;
  return docel::generate_order_to_delivery(p);
}

std::int64_t total_rows(const DocelLog& log) {
  std::int64_t n = 0;
  for (const auto& [attr, table] : log.dynamic_tables) n += table.rows.size();
  return n;
}

bool same_counts(const EvalReport& a, const EvalReport& b) {
  return a.tp == b.tp && a.fp == b.fp && a.fn == b.fn && a.precision == b.precision &&
         a.recall == b.recall && a.f1 == b.f1;
}

}  // namespace

TEST_CASE("a log scores perfectly against itself") {
  DocelLog gold = small_gold();
  EvalReport m = docel::eval_matching(gold, docel::matches_from_registry(gold));
  CHECK(m.level == EvalLevel::matching);
  CHECK(m.mode == FpMode::not_applicable);
  CHECK(m.tp == 3);
  CHECK(m.fp == 0);
  CHECK(m.fn == 0);
  CHECK(m.precision == 1.0);
  CHECK(m.recall == 1.0);
  CHECK(m.f1 == 1.0);

  for (bool propagate : {true, false}) {
    EvalReport a = docel::eval_assignment(gold, gold, propagate);
    CHECK(a.level == EvalLevel::assignment);
    CHECK(a.mode == (propagate ? FpMode::propagate : FpMode::no_propagate));
    CHECK(a.tp == total_rows(gold));
    CHECK(a.fp == 0);
    CHECK(a.fn == 0);
    CHECK(a.f1 == 1.0);
  }
}

TEST_CASE("value ids play no part in assignment scores") {
  DocelLog gold = small_gold();
  DocelLog pred = gold;
  for (auto& [attr, table] : pred.dynamic_tables) {
    std::size_t i = 0;
    for (auto& row : table.rows) row.vid = "z" + std::to_string(++i);
  }
  CHECK(same_counts(docel::eval_assignment(gold, pred, true),
                    docel::eval_assignment(gold, gold, true)));
  CHECK(same_counts(docel::eval_assignment(gold, pred, false),
                    docel::eval_assignment(gold, gold, false)));
}

TEST_CASE("a right attribute on the wrong type is both fp and fn") {
  DocelLog gold = small_gold();
  std::vector<Match> pred = docel::matches_from_registry(gold);
  for (auto& m : pred) {
    if (m.attr == "Customer Address") m.otype = "Order";
  }
  EvalReport r = docel::eval_matching(gold, pred);
  CHECK(r.tp == 2);
  CHECK(r.fp == 1);
  CHECK(r.fn == 1);
  CHECK(*r.precision == doctest::Approx(2.0 / 3.0));
  CHECK(*r.recall == doctest::Approx(2.0 / 3.0));
}

TEST_CASE("propagation decides whether unknown attributes cost precision") {
  DocelLog gold = small_gold();
  DocelLog pred = gold;
  docel::DynamicTable extra;
  extra.attr = "Audit Trail";
  extra.otype = "Order";
  extra.rows = {{"v1", "o1", "e1", AttributeValue::string("opened")},
                {"v2", "o1", "e2", AttributeValue::string("closed")}};
  pred.dynamic_tables.emplace("Audit Trail", extra);

  EvalReport with = docel::eval_assignment(gold, pred, true);
  CHECK(with.tp == total_rows(gold));
  CHECK(with.fp == 2);
  CHECK(with.fn == 0);
  CHECK(*with.precision < 1.0);

  EvalReport without = docel::eval_assignment(gold, pred, false);
  CHECK(without.tp == total_rows(gold));
  CHECK(without.fp == 0);
  CHECK(without.precision == 1.0);
  CHECK(without.recall == 1.0);

  // Matching has no such mode: the extra pair always costs precision.
  EvalReport m = docel::eval_matching(gold, docel::matches_from_registry(pred));
  CHECK(m.tp == 3);
  CHECK(m.fp == 1);
  CHECK(m.fn == 0);
  CHECK(*m.precision == 0.75);
}

TEST_CASE("zero denominators leave metrics absent rather than zero") {
  DocelLog empty;
  EvalReport m = docel::eval_matching(empty, {});
  CHECK(m.tp == 0);
  CHECK(m.fp == 0);
  CHECK(m.fn == 0);
  CHECK_FALSE(m.precision.has_value());
  CHECK_FALSE(m.recall.has_value());
  CHECK_FALSE(m.f1.has_value());

  // Nothing predicted: precision is undefined, recall is a plain zero.
  DocelLog gold = small_gold();
  EvalReport r = docel::eval_matching(gold, {});
  CHECK(r.tp == 0);
  CHECK(r.fp == 0);
  CHECK(r.fn == 3);
  CHECK_FALSE(r.precision.has_value());
  CHECK(r.recall == 0.0);
  CHECK_FALSE(r.f1.has_value());
}

TEST_CASE("disjoint predictions score a hard zero") {
  DocelLog gold = small_gold();
  std::vector<Match> pred = {{"Bogus", "Order", docel::MatchMethod::name_based}};
  EvalReport r = docel::eval_matching(gold, pred);
  CHECK(r.tp == 0);
  CHECK(r.fp == 1);
  CHECK(r.fn == 3);
  CHECK(r.precision == 0.0);
  CHECK(r.recall == 0.0);
  CHECK(r.f1 == 0.0);
}

TEST_CASE("row mutations move the counts the expected way") {
  DocelLog gold = small_gold();
  EvalReport base = docel::eval_assignment(gold, gold, true);

  DocelLog dropped = gold;
  auto& weight_rows = dropped.dynamic_tables.at("Weight").rows;
  REQUIRE(!weight_rows.empty());
  weight_rows.pop_back();
  EvalReport r1 = docel::eval_assignment(gold, dropped, true);
  CHECK(r1.tp == base.tp - 1);
  CHECK(r1.fp == 0);
  CHECK(r1.fn == 1);
  CHECK(*r1.recall < *base.recall);
  CHECK(r1.precision == 1.0);

  DocelLog corrupted = gold;
  auto& first = corrupted.dynamic_tables.at("Weight").rows.front();
  first.value = AttributeValue::integer(first.value.as_integer() + 1);
  EvalReport r2 = docel::eval_assignment(gold, corrupted, true);
  CHECK(r2.tp == base.tp - 1);
  CHECK(r2.fp == 1);
  CHECK(r2.fn == 1);
  CHECK(*r2.precision < 1.0);
  CHECK(*r2.recall < 1.0);
}

TEST_CASE("the text report aligns its columns") {
  EvalReport r;
  r.level = EvalLevel::matching;
  r.mode = FpMode::not_applicable;
  r.tp = 1;
  r.precision = 1.0;
  r.recall = 1.0;
  r.f1 = 1.0;
  CHECK(docel::reports_to_text({r}) ==
        "level     mode  tp  fp  fn  precision  recall      f1\n"
        "matching  n/a    1   0   0     1.0000  1.0000  1.0000\n");
}

TEST_CASE("the json report spells absent metrics as null") {
  EvalReport r;
  CHECK(docel::reports_to_json({r}) ==
        "[\n"
        "  {\n"
        "    \"level\": \"matching\",\n"
        "    \"mode\": \"n/a\",\n"
        "    \"tp\": 0,\n"
        "    \"fp\": 0,\n"
        "    \"fn\": 0,\n"
        "    \"precision\": null,\n"
        "    \"recall\": null,\n"
        "    \"f1\": null\n"
        "  }\n"
        "]\n");

  DocelLog gold = small_gold();
  std::string body = docel::reports_to_json(
      {docel::eval_matching(gold, docel::matches_from_registry(gold)),
       docel::eval_assignment(gold, gold, true), docel::eval_assignment(gold, gold, false)});
  auto parsed = nlohmann::json::parse(body);
  REQUIRE(parsed.is_array());
  REQUIRE(parsed.size() == 3);
  CHECK(parsed[0]["level"] == "matching");
  CHECK(parsed[1]["mode"] == "propagate-fp");
  CHECK(parsed[2]["mode"] == "no-propagate-fp");
  CHECK(parsed[1]["precision"] == 1.0);
  CHECK(parsed[2]["f1"] == 1.0);
}
