#include <algorithm>
#include <filesystem>
#include <set>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "test_support.hpp"

using testsup::CliResult;
using testsup::fixture_path;
using testsup::run_cli;
using testsup::slurp;
using testsup::spit;
using testsup::TempDir;

namespace {

const std::string kValueTable =
    "ValueID,ObjectID,EventID,Value\n"
    "v1,o1,e1,100\n"
    "v2,o2,e3,60\n"
    "v3,o1,e5,70\n";

std::set<std::string> dir_files(const std::string& dir) {
  std::set<std::string> out;
  for (const auto& entry : std::filesystem::directory_iterator(dir))
    out.insert(entry.path().filename().string());
  return out;
}

void check_same_bundles(const std::string& a, const std::string& b) {
  auto names = dir_files(a);
  REQUIRE(names == dir_files(b));
  for (const auto& name : names) {
    CAPTURE(name);
    CHECK(slurp(a + "/" + name) == slurp(b + "/" + name));
  }
}

bool contains(const std::string& haystack, const std::string& needle) {
  return haystack.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("convert writes the expected bundle for the sample log") {
  TempDir tmp;
  std::string out = tmp.sub("bundle");
  CliResult r = run_cli({"convert", fixture_path("running_example.jsonocel"), out});
  CAPTURE(r.err);
  REQUIRE(r.exit_code == 0);
  CHECK(contains(r.out, "matched 1 attribute(s):"));
  CHECK(contains(r.out, "Value -> Orders  [unique-candidate], 3 row(s)"));
  CHECK(contains(r.out, "wrote bundle to " + out));
  CHECK(r.err.empty());

  CHECK(dir_files(out) == std::set<std::string>{"manifest.json", "events.csv",
                                                "objects_Items.csv", "objects_Orders.csv",
                                                "dyn_Value.csv"});
  CHECK(slurp(out + "/dyn_Value.csv") == kValueTable);
  std::string events = slurp(out + "/events.csv");
  std::string header = events.substr(0, events.find('\n'));
  CHECK_FALSE(contains(header, "Value"));
}

TEST_CASE("convert accepts the tabular pair and produces the same bundle") {
  TempDir tmp;
  std::string from_json = tmp.sub("a"), from_csv = tmp.sub("b");
  REQUIRE(run_cli({"convert", fixture_path("running_example.jsonocel"), from_json}).exit_code == 0);
  CliResult r = run_cli({"convert", "--events", fixture_path("running_example_events.csv"),
                         "--objects", fixture_path("running_example_objects.csv"), from_csv});
  CAPTURE(r.err);
  REQUIRE(r.exit_code == 0);
  check_same_bundles(from_json, from_csv);
}

TEST_CASE("convert writes a match report on request") {
  TempDir tmp;
  std::string report = tmp.sub("report.json");
  CliResult r = run_cli({"convert", fixture_path("running_example.jsonocel"), tmp.sub("bundle"),
                         "--report", report});
  REQUIRE(r.exit_code == 0);
  auto doc = nlohmann::json::parse(slurp(report));
  REQUIRE(doc.is_array());
  REQUIRE(doc.size() == 1);
  CHECK(doc[0]["attr"] == "Value");
  CHECK(doc[0]["object_type"] == "Orders");
  CHECK(doc[0]["method"] == "unique-candidate");
  bool saw_items = false;
  for (const auto& entry : doc[0]["audit"]) {
    if (entry["type"] == "Items") {
      saw_items = true;
      CHECK(entry["cooccurrence"] == false);
    }
  }
  CHECK(saw_items);
}

TEST_CASE("json mode keeps stdout machine-readable") {
  TempDir tmp;
  CliResult r =
      run_cli({"convert", fixture_path("running_example.jsonocel"), tmp.sub("bundle"), "--json"});
  REQUIRE(r.exit_code == 0);
  CHECK(contains(r.err, "matched 1 attribute(s):"));
  auto doc = nlohmann::json::parse(r.out);  // throws on any stray text
  CHECK(doc["events"] == 6);
  CHECK(doc["objects"]["Orders"] == 2);
  CHECK(doc["objects"]["Items"] == 3);
  CHECK(doc["dynamic_rows"]["Value"] == 3);
  REQUIRE(doc["matches"].size() == 1);
  CHECK(doc["matches"][0]["attr"] == "Value");
  CHECK(doc["matches"][0]["object_type"] == "Orders");
}

TEST_CASE("convert rejects defective inputs with exit code 1") {
  TempDir tmp;
  std::string out = tmp.sub("bundle");

  CliResult missing = run_cli({"convert", tmp.sub("absent.jsonocel"), out});
  CHECK(missing.exit_code == 1);
  CHECK(contains(missing.err, "absent.jsonocel"));

  std::filesystem::create_directory(tmp.sub("dir"));
  CliResult directory = run_cli({"convert", tmp.sub("dir"), out});
  CHECK(directory.exit_code == 1);
  CHECK(contains(directory.err, "directory"));

  spit(tmp.sub("log.txt"), "{}");
  CHECK(run_cli({"convert", tmp.sub("log.txt"), out}).exit_code == 1);

  spit(tmp.sub("empty.jsonocel"), "{}");
  CliResult invalid = run_cli({"convert", tmp.sub("empty.jsonocel"), out});
  CHECK(invalid.exit_code == 1);
  CHECK(contains(invalid.err, "missing-required-key"));

  CliResult half = run_cli({"convert", "--events", fixture_path("running_example_events.csv"), out});
  CHECK(half.exit_code == 1);
  CHECK(contains(half.err, "--objects"));

  CHECK(run_cli({"convert", fixture_path("running_example.jsonocel")}).exit_code == 1);
  CHECK(run_cli({"convert", fixture_path("running_example.jsonocel"), out, "--similarity",
                 "cosine"})
            .exit_code == 1);
  CHECK(run_cli({"convert", fixture_path("running_example.jsonocel"), out, "--tau", "-0.5"})
            .exit_code == 1);
  CHECK(run_cli({"convert", fixture_path("running_example.jsonocel"), out, "--reserved", "x",
                 "--no-reserved"})
            .exit_code == 1);
}

TEST_CASE("config files fill in flags and reject unknown keys") {
  TempDir tmp;
  spit(tmp.sub("good.json"), "{\"tau\": 0.2, \"no-name-matching\": true}");
  CliResult ok = run_cli({"convert", fixture_path("running_example.jsonocel"), tmp.sub("a"),
                          "--config", tmp.sub("good.json")});
  CHECK(ok.exit_code == 0);

  spit(tmp.sub("bad_key.json"), "{\"bogus\": 1}");
  CliResult bad_key = run_cli({"convert", fixture_path("running_example.jsonocel"), tmp.sub("b"),
                               "--config", tmp.sub("bad_key.json")});
  CHECK(bad_key.exit_code == 1);
  CHECK(contains(bad_key.err, "unknown key"));

  spit(tmp.sub("broken.json"), "{\"tau\": ");
  CHECK(run_cli({"convert", fixture_path("running_example.jsonocel"), tmp.sub("c"), "--config",
                 tmp.sub("broken.json")})
            .exit_code == 1);

  spit(tmp.sub("bad_type.json"), "{\"tau\": \"high\"}");
  CliResult bad_type = run_cli({"convert", fixture_path("running_example.jsonocel"), tmp.sub("d"),
                                "--config", tmp.sub("bad_type.json")});
  CHECK(bad_type.exit_code == 1);
  CHECK(contains(bad_type.err, "tau"));
}

TEST_CASE("output failures exit with code 2") {
  TempDir tmp;
  spit(tmp.sub("blocker"), "x");
  CliResult r = run_cli({"convert", fixture_path("running_example.jsonocel"),
                         tmp.sub("blocker") + "/bundle"});
  CHECK(r.exit_code == 2);
  CHECK(!r.err.empty());

  std::string gold = tmp.sub("gold");
  REQUIRE(run_cli({"generate", "shipping-method", gold, "--orders", "2"}).exit_code == 0);
  CliResult rep = run_cli({"evaluate", gold, gold, "--report", tmp.sub("blocker") + "/rep.json"});
  CHECK(rep.exit_code == 2);
}

TEST_CASE("generate is deterministic and honors its config file") {
  TempDir tmp;
  std::string a = tmp.sub("a"), b = tmp.sub("b"), c = tmp.sub("c"), d = tmp.sub("d");
  CliResult r1 = run_cli({"generate", "order-to-delivery", a, "--orders", "5", "--seed", "9"});
  REQUIRE(r1.exit_code == 0);
  CHECK(contains(r1.out, "dynamic rows:"));
  CHECK(contains(r1.out, "wrote bundle to " + a));
  REQUIRE(run_cli({"generate", "order-to-delivery", b, "--orders", "5", "--seed", "9"}).exit_code ==
          0);
  check_same_bundles(a, b);

  spit(tmp.sub("cfg.json"), "{\"orders\": 5, \"seed\": 9}");
  REQUIRE(run_cli({"generate", "order-to-delivery", c, "--config", tmp.sub("cfg.json")}).exit_code ==
          0);
  check_same_bundles(a, c);

  // A flag wins over the config value.
  spit(tmp.sub("cfg2.json"), "{\"orders\": 50, \"seed\": 9}");
  REQUIRE(run_cli({"generate", "order-to-delivery", d, "--orders", "5", "--config",
                   tmp.sub("cfg2.json")})
              .exit_code == 0);
  check_same_bundles(a, d);

  spit(tmp.sub("cfg3.json"), "{\"volume\": 5}");
  CHECK(run_cli({"generate", "order-to-delivery", tmp.sub("e"), "--config", tmp.sub("cfg3.json")})
            .exit_code == 1);
  CHECK(run_cli({"generate", "car-rental", tmp.sub("f")}).exit_code == 1);
}

TEST_CASE("an empty generated bundle is valid and scores as absent") {
  TempDir tmp;
  std::string dir = tmp.sub("bundle");
  CliResult gen = run_cli({"generate", "shipping-method", dir, "--orders", "0"});
  REQUIRE(gen.exit_code == 0);
  CHECK(contains(gen.out, "events: 0"));

  CliResult ev = run_cli({"evaluate", dir, dir});
  REQUIRE(ev.exit_code == 0);
  // The registry still matches itself; assignment has nothing to score.
  CHECK(contains(ev.out, "matching"));
  CHECK(contains(ev.out, "n/a"));
  CHECK(contains(ev.out, "1.0000"));
}

TEST_CASE("the generated log converts back to a perfect score") {
  TempDir tmp;
  std::string gold = tmp.sub("gold"), pred = tmp.sub("pred"), flat = tmp.sub("flat.jsonocel");
  CliResult gen = run_cli({"generate", "order-to-delivery", gold, "--orders", "5", "--seed", "3",
                           "--ocel", flat});
  REQUIRE(gen.exit_code == 0);
  CHECK(contains(gen.out, "wrote OCEL to " + flat));
  REQUIRE(run_cli({"convert", flat, pred}).exit_code == 0);

  CliResult all = run_cli({"evaluate", gold, pred});
  REQUIRE(all.exit_code == 0);
  CHECK(contains(all.out, "matching"));
  CHECK(contains(all.out, "propagate-fp"));
  CHECK(contains(all.out, "1.0000  1.0000  1.0000"));
  CHECK_FALSE(contains(all.out, "0.9"));

  CliResult matching = run_cli({"evaluate", gold, pred, "--mode", "matching"});
  REQUIRE(matching.exit_code == 0);
  CHECK(std::count(matching.out.begin(), matching.out.end(), '\n') == 2);  // header + one row

  CliResult assignment = run_cli({"evaluate", gold, pred, "--mode", "assignment"});
  REQUIRE(assignment.exit_code == 0);
  CHECK(std::count(assignment.out.begin(), assignment.out.end(), '\n') == 3);
  CHECK_FALSE(contains(assignment.out, "matching"));

  CliResult json = run_cli({"evaluate", gold, pred, "--json"});
  REQUIRE(json.exit_code == 0);
  auto doc = nlohmann::json::parse(json.out);
  REQUIRE(doc.is_array());
  REQUIRE(doc.size() == 3);
  for (const auto& report : doc) {
    CHECK(report["fp"] == 0);
    CHECK(report["fn"] == 0);
    CHECK(report["precision"] == 1.0);
    CHECK(report["recall"] == 1.0);
  }

  CHECK(run_cli({"evaluate", tmp.sub("nowhere"), pred}).exit_code == 1);
}

TEST_CASE("help is help and bad invocations fail cleanly") {
  CliResult help = run_cli({"--help"});
  CHECK(help.exit_code == 0);
  CHECK(contains(help.out, "convert"));
  CHECK(contains(help.out, "generate"));
  CHECK(contains(help.out, "evaluate"));
  CHECK(run_cli({"convert", "--help"}).exit_code == 0);
  CHECK(run_cli({}).exit_code == 1);
  CHECK(run_cli({"transmogrify"}).exit_code == 1);
}
