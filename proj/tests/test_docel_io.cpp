#include "docel/docel_io.hpp"

#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "docel/errors.hpp"
#include "doctest.h"
#include "test_support.hpp"

using docel::AttributeValue;
using docel::DocelLog;
using docel::DynamicAttributeRow;
using docel::DynamicTable;
using docel::Errc;
using docel::read_docel;
using docel::write_docel;
using testsup::TempDir;

namespace {

template <class F>
std::optional<Errc> thrown_code(F&& f) {
  try {
    f();
  } catch (const docel::Error& e) {
    return e.code();
  }
  return std::nullopt;
}

// The order log in its target form: Value lives in a dynamic table owned by
// Orders, events carry no attributes.
DocelLog docel_example() {
  docel::OcelLog flat = testsup::order_example();
  DocelLog log;
  log.objects = flat.objects;
  log.object_types = flat.object_types;
  for (docel::Event ev : flat.events) {
    ev.attrs.clear();
    log.events.push_back(std::move(ev));
  }
  DynamicTable table;
  table.attr = "Value";
  table.otype = "Orders";
  table.rows = {
      {"v1", "o1", "e1", AttributeValue::integer(100)},
      {"v2", "o2", "e3", AttributeValue::integer(60)},
      {"v3", "o1", "e5", AttributeValue::integer(70)},
  };
  log.dynamic_tables.emplace("Value", std::move(table));
  return log;
}

}  // namespace

TEST_CASE("bundle write produces the expected layout and counts") {
  TempDir dir;
  DocelLog log = docel_example();
  auto summary = write_docel(log, dir.str());

  CHECK(summary.event_count == 6);
  CHECK(summary.object_counts ==
        std::map<std::string, std::size_t>{{"Items", 3}, {"Orders", 2}});
  CHECK(summary.dynamic_row_counts == std::map<std::string, std::size_t>{{"Value", 3}});

  namespace fs = std::filesystem;
  for (const char* f :
       {"manifest.json", "events.csv", "objects_Items.csv", "objects_Orders.csv", "dyn_Value.csv"}) {
    CAPTURE(f);
    CHECK(fs::exists(dir.path / f));
  }
  CHECK(testsup::slurp(dir.sub("dyn_Value.csv")) ==
        "ValueID,ObjectID,EventID,Value\n"
        "v1,o1,e1,100\n"
        "v2,o2,e3,60\n"
        "v3,o1,e5,70\n");
}

TEST_CASE("bundle read inverts write, value ids included") {
  TempDir dir;
  DocelLog log = docel_example();
  write_docel(log, dir.str());
  DocelLog back = read_docel(dir.str());
  CHECK(docel::logs_equal(log, back));

  // Rewriting is byte-stable.
  TempDir dir2;
  write_docel(back, dir2.str());
  for (const char* f :
       {"manifest.json", "events.csv", "objects_Items.csv", "objects_Orders.csv", "dyn_Value.csv"}) {
    CAPTURE(f);
    CHECK(testsup::slurp(dir.sub(f)) == testsup::slurp(dir2.sub(f)));
  }
}

TEST_CASE("nonstandard value ids survive the round trip") {
  TempDir dir;
  DocelLog log = docel_example();
  log.dynamic_tables.at("Value").rows[1].vid = "k9";
  write_docel(log, dir.str());
  DocelLog back = read_docel(dir.str());
  CHECK(back.dynamic_tables.at("Value").rows[1].vid == "k9");
}

TEST_CASE("names are sanitized for filenames but kept exact in the manifest") {
  TempDir dir;
  DocelLog log = docel_example();
  // Rename the type and attribute to something filename-hostile.
  log.object_types = {"Items", "Order/Group"};
  for (auto& [oid, obj] : log.objects) {
    if (obj.type == "Orders") obj.type = "Order/Group";
  }
  DynamicTable table = log.dynamic_tables.at("Value");
  table.attr = "Net Value";
  table.otype = "Order/Group";
  log.dynamic_tables.clear();
  log.dynamic_tables.emplace("Net Value", std::move(table));

  write_docel(log, dir.str());
  namespace fs = std::filesystem;
  CHECK(fs::exists(dir.path / "objects_Order_Group.csv"));
  CHECK(fs::exists(dir.path / "dyn_Net_Value.csv"));
  CHECK(testsup::slurp(dir.sub("manifest.json")).find("Order/Group") != std::string::npos);

  DocelLog back = read_docel(dir.str());
  CHECK(docel::logs_equal(log, back));
}

TEST_CASE("values with commas and quotes survive the tabular encoding") {
  TempDir dir;
  DocelLog log = docel_example();
  auto& rows = log.dynamic_tables.at("Value").rows;
  rows[0].value = AttributeValue::string("12 Baker Street, \"Flat B\"");
  rows[1].value = AttributeValue::string("plain");
  rows[2].value = AttributeValue::string("other, place");
  write_docel(log, dir.str());
  DocelLog back = read_docel(dir.str());
  CHECK(back.dynamic_tables.at("Value").rows[0].value ==
        AttributeValue::string("12 Baker Street, \"Flat B\""));
  CHECK(docel::logs_equal(log, back));
}

TEST_CASE("undeclared owned-looking files are rejected") {
  TempDir dir;
  write_docel(docel_example(), dir.str());
  testsup::spit(dir.sub("dyn_Surprise.csv"), "ValueID,ObjectID,EventID,Surprise\n");
  CHECK(thrown_code([&] { read_docel(dir.str()); }) == Errc::manifest_mismatch);
}

TEST_CASE("unrelated files are ignored") {
  TempDir dir;
  write_docel(docel_example(), dir.str());
  testsup::spit(dir.sub("README.txt"), "notes\n");
  CHECK(docel::logs_equal(read_docel(dir.str()), docel_example()));
}

TEST_CASE("missing tables are reported by name") {
  TempDir dir;
  write_docel(docel_example(), dir.str());
  std::filesystem::remove(dir.path / "dyn_Value.csv");
  CHECK(thrown_code([&] { read_docel(dir.str()); }) == Errc::missing_table);

  TempDir dir2;
  write_docel(docel_example(), dir2.str());
  std::filesystem::remove(dir2.path / "objects_Items.csv");
  CHECK(thrown_code([&] { read_docel(dir2.str()); }) == Errc::missing_table);

  TempDir dir3;
  CHECK(thrown_code([&] { read_docel(dir3.str()); }) == Errc::missing_table);
}

TEST_CASE("manifest inconsistencies are rejected") {
  // Registry referencing an unregistered type.
  TempDir dir;
  write_docel(docel_example(), dir.str());
  std::string manifest = testsup::slurp(dir.sub("manifest.json"));
  // The first "Orders" occurrence is inside object_types; break the
  // registry's instead.
  auto broken = manifest;
  auto pos = broken.rfind("\"Orders\"");
  broken.replace(pos, 8, "\"Ghosts\"");
  testsup::spit(dir.sub("manifest.json"), broken);
  CHECK(thrown_code([&] { read_docel(dir.str()); }) == Errc::manifest_mismatch);

  // An attribute listed both as event attribute and dynamic attribute.
  TempDir dir2;
  DocelLog log = docel_example();
  write_docel(log, dir2.str());
  std::string m2 = testsup::slurp(dir2.sub("manifest.json"));
  auto p2 = m2.find("\"event_attributes\": []");
  REQUIRE(p2 != std::string::npos);
  m2.replace(p2, std::string("\"event_attributes\": []").size(),
             "\"event_attributes\": [\"Value\"]");
  testsup::spit(dir2.sub("manifest.json"), m2);
  CHECK(thrown_code([&] { read_docel(dir2.str()); }) == Errc::manifest_mismatch);
}

TEST_CASE("dynamic table defects are rejected") {
  auto with_dyn = [](const std::string& body) {
    auto dir = std::make_unique<TempDir>();
    write_docel(docel_example(), dir->str());
    testsup::spit(dir->sub("dyn_Value.csv"), body);
    return dir;
  };

  auto bad_header = with_dyn("ValueID,ObjectID,EventID,Price\nv1,o1,e1,100\n");
  CHECK(thrown_code([&] { read_docel(bad_header->str()); }) == Errc::manifest_mismatch);

  auto unknown_event = with_dyn("ValueID,ObjectID,EventID,Value\nv1,o1,e99,100\n");
  CHECK(thrown_code([&] { read_docel(unknown_event->str()); }) == Errc::referential_integrity);

  auto unknown_object = with_dyn("ValueID,ObjectID,EventID,Value\nv1,zz,e1,100\n");
  CHECK(thrown_code([&] { read_docel(unknown_object->str()); }) == Errc::referential_integrity);

  auto wrong_type = with_dyn("ValueID,ObjectID,EventID,Value\nv1,i1,e1,100\n");
  CHECK(thrown_code([&] { read_docel(wrong_type->str()); }) == Errc::referential_integrity);

  // e4 does not reference o1.
  auto not_referenced = with_dyn("ValueID,ObjectID,EventID,Value\nv1,o1,e4,100\n");
  CHECK(thrown_code([&] { read_docel(not_referenced->str()); }) == Errc::referential_integrity);

  auto dup_vid = with_dyn("ValueID,ObjectID,EventID,Value\nv1,o1,e1,100\nv1,o2,e3,60\n");
  CHECK(thrown_code([&] { read_docel(dup_vid->str()); }) == Errc::invalid_field);

  auto empty_value = with_dyn("ValueID,ObjectID,EventID,Value\nv1,o1,e1,\n");
  CHECK(thrown_code([&] { read_docel(empty_value->str()); }) == Errc::invalid_field);

  auto twice_same_event = with_dyn("ValueID,ObjectID,EventID,Value\nv1,o1,e1,100\nv2,o1,e1,50\n");
  CHECK(thrown_code([&] { read_docel(twice_same_event->str()); }) == Errc::invalid_field);

  auto stuck_value = with_dyn("ValueID,ObjectID,EventID,Value\nv1,o1,e1,100\nv2,o1,e5,100\n");
  CHECK(thrown_code([&] { read_docel(stuck_value->str()); }) == Errc::invalid_field);

  // Returning to an earlier value later is legitimate.
  auto revisit = with_dyn("ValueID,ObjectID,EventID,Value\nv1,o1,e1,100\nv2,o1,e5,70\nv3,o1,e6,100\n");
  DocelLog ok = read_docel(revisit->str());
  CHECK(ok.dynamic_tables.at("Value").rows.size() == 3);
}

TEST_CASE("dynamic attribute may not appear as an events column") {
  TempDir dir;
  write_docel(docel_example(), dir.str());
  std::string events = testsup::slurp(dir.sub("events.csv"));
  auto pos = events.find("ID,Activity,Timestamp,Items,Orders");
  REQUIRE(pos == 0);
  events.replace(0, std::string("ID,Activity,Timestamp,Items,Orders").size(),
                 "ID,Activity,Timestamp,Items,Orders,Value");
  testsup::spit(dir.sub("events.csv"), events);
  CHECK(thrown_code([&] { read_docel(dir.str()); }) == Errc::manifest_mismatch);
}

TEST_CASE("empty log round-trips") {
  TempDir dir;
  DocelLog empty;
  write_docel(empty, dir.str());
  DocelLog back = read_docel(dir.str());
  CHECK(docel::logs_equal(empty, back));
  CHECK(back.events.empty());
  CHECK(back.dynamic_tables.empty());
}
