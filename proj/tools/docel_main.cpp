#include <cstdint>
#include <filesystem>
#include <iostream>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "docel/assign.hpp"
#include "docel/csv.hpp"
#include "docel/detect.hpp"
#include "docel/docel_io.hpp"
#include "docel/errors.hpp"
#include "docel/evaluate.hpp"
#include "docel/generate.hpp"
#include "docel/ocel_io.hpp"

namespace {

namespace fs = std::filesystem;
using docel::Errc;
using docel::Error;
using ojson = nlohmann::ordered_json;

constexpr int kOk = 0;
constexpr int kInputError = 1;
constexpr int kOutputError = 2;

// Human-readable chatter; kept off stdout when stdout carries JSON.
std::ostream& human(bool json_mode) { return json_mode ? std::cerr : std::cout; }

ojson load_config_object(const std::string& path) {
  std::string text = docel::read_text_file(path);
  ojson cfg;
  try {
    cfg = ojson::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(Errc::invalid_config, std::string("config: ") + e.what());
  }
  if (!cfg.is_object()) throw Error(Errc::invalid_config, "config: top level must be an object");
  return cfg;
}

[[noreturn]] void bad_config_type(const std::string& key, const char* want) {
  throw Error(Errc::invalid_config, "config: \"" + key + "\" must be " + want);
}

double config_number(const ojson& v, const std::string& key) {
  if (!v.is_number()) bad_config_type(key, "a number");
  return v.get<double>();
}

bool config_bool(const ojson& v, const std::string& key) {
  if (!v.is_boolean()) bad_config_type(key, "a boolean");
  return v.get<bool>();
}

std::int64_t config_nonneg_int(const ojson& v, const std::string& key) {
  if (!v.is_number_integer() || v.get<std::int64_t>() < 0)
    bad_config_type(key, "a non-negative integer");
  return v.get<std::int64_t>();
}

std::string config_string(const ojson& v, const std::string& key) {
  if (!v.is_string()) bad_config_type(key, "a string");
  return v.get<std::string>();
}

std::vector<std::string> config_string_array(const ojson& v, const std::string& key) {
  if (!v.is_array()) bad_config_type(key, "an array of strings");
  std::vector<std::string> out;
  for (const auto& item : v) {
    if (!item.is_string()) bad_config_type(key, "an array of strings");
    out.push_back(item.get<std::string>());
  }
  return out;
}

struct ConvertOpts {
  std::string input;
  std::string out_dir;
  std::string events_path;
  std::string objects_path;
  double tau = 0.1;
  std::vector<std::string> reserved;
  bool no_reserved = false;
  std::string similarity = "lexical";
  bool no_name_matching = false;
  std::string report_path;
  std::string config_path;
  bool json_out = false;

  CLI::Option* tau_opt = nullptr;
  CLI::Option* reserved_opt = nullptr;
  CLI::Option* no_reserved_opt = nullptr;
  CLI::Option* similarity_opt = nullptr;
  CLI::Option* nnm_opt = nullptr;
};

struct GenerateOpts {
  std::string process;
  std::string out_dir;
  std::int64_t orders = 100;
  std::uint64_t seed = 1;
  std::string ocel_path;
  bool sparse = false;
  std::string config_path;
  bool json_out = false;

  CLI::Option* orders_opt = nullptr;
  CLI::Option* seed_opt = nullptr;
  CLI::Option* sparse_opt = nullptr;
};

struct EvaluateOpts {
  std::string gold_dir;
  std::string pred_dir;
  std::string mode = "all";
  std::string report_path;
  bool json_out = false;
};

void apply_convert_config(ConvertOpts& o) {
  if (o.config_path.empty()) return;
  ojson cfg = load_config_object(o.config_path);
  for (const auto& [key, val] : cfg.items()) {
    if (key == "tau") {
      if (!o.tau_opt->count()) o.tau = config_number(val, key);
    } else if (key == "reserved") {
      if (!o.reserved_opt->count() && !o.no_reserved_opt->count())
        o.reserved = config_string_array(val, key);
    } else if (key == "no-reserved") {
      if (!o.no_reserved_opt->count()) o.no_reserved = config_bool(val, key);
    } else if (key == "similarity") {
      if (!o.similarity_opt->count()) o.similarity = config_string(val, key);
    } else if (key == "no-name-matching") {
      if (!o.nnm_opt->count()) o.no_name_matching = config_bool(val, key);
    } else {
      throw Error(Errc::invalid_config, "config: unknown key \"" + key + "\"");
    }
  }
}

void apply_generate_config(GenerateOpts& o) {
  if (o.config_path.empty()) return;
  ojson cfg = load_config_object(o.config_path);
  for (const auto& [key, val] : cfg.items()) {
    if (key == "orders") {
      if (!o.orders_opt->count()) o.orders = config_nonneg_int(val, key);
    } else if (key == "seed") {
      if (!o.seed_opt->count()) o.seed = std::uint64_t(config_nonneg_int(val, key));
    } else if (key == "sparse") {
      if (!o.sparse_opt->count()) o.sparse = config_bool(val, key);
    } else {
      throw Error(Errc::invalid_config, "config: unknown key \"" + key + "\"");
    }
  }
}

docel::DetectorConfig detector_config(const ConvertOpts& o) {
  docel::DetectorConfig cfg;
  cfg.tau = o.tau;
  if (o.no_reserved)
    cfg.reserved_names.clear();
  else if (!o.reserved.empty())
    cfg.reserved_names = std::set<std::string>(o.reserved.begin(), o.reserved.end());
  cfg.name_matching_enabled = !o.no_name_matching;
  if (o.similarity == "lexical") {
    cfg.similarity = docel::lexical_similarity;
  } else if (o.similarity.rfind("embeddings:", 0) == 0) {
    cfg.similarity = docel::load_embedding_similarity(o.similarity.substr(11));
  } else {
    throw Error(Errc::invalid_config, "--similarity must be \"lexical\" or \"embeddings:PATH\"");
  }
  return cfg;
}

docel::OcelLog parse_convert_input(const ConvertOpts& o) {
  if (!o.events_path.empty() || !o.objects_path.empty()) {
    if (o.events_path.empty() || o.objects_path.empty())
      throw Error(Errc::invalid_config, "--events and --objects must be given together");
    if (!o.input.empty())
      throw Error(Errc::invalid_config, "pass either an input file or --events/--objects, not both");
    return docel::parse_ocel_csv(docel::read_text_file(o.events_path),
                                 docel::read_text_file(o.objects_path));
  }
  if (o.input.empty())
    throw Error(Errc::invalid_config, "missing input: pass an OCEL JSON file or --events/--objects");
  if (fs::is_directory(o.input))
    throw Error(Errc::invalid_config, "expected an OCEL file, got a directory: " + o.input);
  if (o.input.ends_with(".jsonocel") || o.input.ends_with(".json"))
    return docel::parse_ocel_json(docel::read_text_file(o.input));
  if (o.input.ends_with(".csv"))
    throw Error(Errc::invalid_config, "tabular input needs --events and --objects");
  throw Error(Errc::invalid_config, "unrecognized input extension: " + o.input);
}

ojson match_report_json(const docel::DetectionReport& rep) {
  std::map<std::string, const docel::Match*> by_attr;
  for (const auto& m : rep.matches) by_attr[m.attr] = &m;
  ojson arr = ojson::array();
  for (const auto& [attr, cs] : rep.audits) {
    ojson entry;
    entry["attr"] = attr;
    auto it = by_attr.find(attr);
    entry["object_type"] = it != by_attr.end() ? ojson(it->second->otype) : ojson(nullptr);
    entry["method"] =
        it != by_attr.end() ? ojson(docel::match_method_name(it->second->method)) : ojson(nullptr);
    ojson audit = ojson::array();
    for (const auto& [type, ta] : cs.audit) {
      ojson a;
      a["type"] = type;
      a["cooccurrence"] = ta.cooccurrence;
      a["changes"] = ta.changes;
      a["removed_by_relation"] = ta.removed_by_relation;
      a["similarity"] = ta.similarity ? ojson(*ta.similarity) : ojson(nullptr);
      audit.push_back(std::move(a));
    }
    entry["audit"] = std::move(audit);
    arr.push_back(std::move(entry));
  }
  return arr;
}

ojson bundle_json(const docel::BundleSummary& s) {
  ojson o;
  o["out_dir"] = s.dir;
  o["events"] = s.event_count;
  o["objects"] = ojson::object();
  for (const auto& [type, n] : s.object_counts) o["objects"][type] = n;
  o["dynamic_rows"] = ojson::object();
  for (const auto& [attr, n] : s.dynamic_row_counts) o["dynamic_rows"][attr] = n;
  return o;
}

void print_bundle_counts(std::ostream& out, const docel::BundleSummary& s) {
  out << "events: " << s.event_count << "\n";
  out << "objects:";
  if (s.object_counts.empty()) out << " none";
  bool first = true;
  for (const auto& [type, n] : s.object_counts) {
    out << (first ? " " : ", ") << type << " " << n;
    first = false;
  }
  out << "\n";
}

int run_convert(ConvertOpts& o) {
  docel::OcelLog log;
  docel::DetectorConfig cfg;
  try {
    apply_convert_config(o);
    cfg = detector_config(o);
    log = parse_convert_input(o);
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return kInputError;
  }

  docel::DetectionReport rep = docel::detect_with_audit(log, cfg);
  docel::DocelLog out = docel::transform(log, rep.matches);

  docel::BundleSummary summary;
  try {
    summary = docel::write_docel(out, o.out_dir);
    if (!o.report_path.empty())
      docel::write_text_file(o.report_path, match_report_json(rep).dump(2) + "\n");
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return kOutputError;
  }

  std::ostream& h = human(o.json_out);
  if (rep.matches.empty()) {
    h << "no dynamic attributes detected\n";
  } else {
    h << "matched " << rep.matches.size() << " attribute(s):\n";
    for (const auto& m : rep.matches) {
      auto rows = summary.dynamic_row_counts.find(m.attr);
      h << "  " << m.attr << " -> " << m.otype << "  [" << docel::match_method_name(m.method)
        << "], " << (rows != summary.dynamic_row_counts.end() ? rows->second : 0) << " row(s)\n";
    }
  }
  print_bundle_counts(h, summary);
  h << "wrote bundle to " << summary.dir << "\n";

  if (o.json_out) {
    ojson j = bundle_json(summary);
    ojson matches = ojson::array();
    for (const auto& m : rep.matches) {
      ojson mj;
      mj["attr"] = m.attr;
      mj["object_type"] = m.otype;
      mj["method"] = docel::match_method_name(m.method);
      matches.push_back(std::move(mj));
    }
    j["matches"] = std::move(matches);
    std::cout << j.dump(2) << "\n";
  }
  return kOk;
}

int run_generate(GenerateOpts& o) {
  docel::DocelLog gold;
  try {
    apply_generate_config(o);
    if (o.process == "order-to-delivery") {
      docel::O2DParams p;
      p.num_orders = o.orders;
      p.seed = o.seed;
      gold = docel::generate_order_to_delivery(p);
    } else {
      docel::ShipParams p;
      p.num_orders = o.orders;
      p.seed = o.seed;
      gold = docel::generate_shipping_method(p);
    }
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return kInputError;
  }

  docel::BundleSummary summary;
  try {
    summary = docel::write_docel(gold, o.out_dir);
    if (!o.ocel_path.empty())
      docel::write_text_file(o.ocel_path, docel::write_ocel_json(docel::flatten_to_ocel(gold, o.sparse)));
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return kOutputError;
  }

  std::ostream& h = human(o.json_out);
  print_bundle_counts(h, summary);
  h << "dynamic rows:";
  if (summary.dynamic_row_counts.empty()) h << " none";
  bool first = true;
  for (const auto& [attr, n] : summary.dynamic_row_counts) {
    h << (first ? " " : ", ") << attr << " " << n;
    first = false;
  }
  h << "\nwrote bundle to " << summary.dir << "\n";
  if (!o.ocel_path.empty()) h << "wrote OCEL to " << o.ocel_path << "\n";

  if (o.json_out) {
    ojson j = bundle_json(summary);
    j["ocel"] = o.ocel_path.empty() ? ojson(nullptr) : ojson(o.ocel_path);
    std::cout << j.dump(2) << "\n";
  }
  return kOk;
}

int run_evaluate(EvaluateOpts& o) {
  docel::DocelLog gold, pred;
  try {
    gold = docel::read_docel(o.gold_dir);
    pred = docel::read_docel(o.pred_dir);
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return kInputError;
  }

  std::vector<docel::EvalReport> reports;
  if (o.mode != "assignment")
    reports.push_back(docel::eval_matching(gold, docel::matches_from_registry(pred)));
  if (o.mode != "matching") {
    reports.push_back(docel::eval_assignment(gold, pred, true));
    reports.push_back(docel::eval_assignment(gold, pred, false));
  }

  human(o.json_out) << docel::reports_to_text(reports);
  if (o.json_out) std::cout << docel::reports_to_json(reports);
  if (!o.report_path.empty()) {
    try {
      docel::write_text_file(o.report_path, docel::reports_to_json(reports));
    } catch (const Error& e) {
      std::cerr << e.what() << "\n";
      return kOutputError;
    }
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dynamic object-attribute detection for object-centric event logs", "docel"};
  app.require_subcommand(1);

  ConvertOpts co;
  CLI::App* cv = app.add_subcommand(
      "convert", "Detect dynamic object attributes in an OCEL log and write a DOCEL bundle");
  cv->add_option("input", co.input, "OCEL JSON file (.jsonocel or .json)");
  cv->add_option("out_dir", co.out_dir, "destination bundle directory");
  cv->add_option("--events", co.events_path, "events table of a tabular OCEL pair");
  cv->add_option("--objects", co.objects_path, "objects table of a tabular OCEL pair");
  co.tau_opt = cv->add_option("--tau", co.tau, "name-match margin (default 0.1)")
                   ->check(CLI::NonNegativeNumber);
  co.reserved_opt = cv->add_option(
      "--reserved", co.reserved,
      "attribute name never treated as dynamic (repeatable; replaces the default set)");
  co.no_reserved_opt =
      cv->add_flag("--no-reserved", co.no_reserved, "treat no attribute name as reserved");
  co.no_reserved_opt->excludes(co.reserved_opt);
  co.similarity_opt =
      cv->add_option("--similarity", co.similarity, "\"lexical\" (default) or \"embeddings:PATH\"");
  co.nnm_opt =
      cv->add_flag("--no-name-matching", co.no_name_matching, "disable name-based disambiguation");
  cv->add_option("--report", co.report_path, "write a JSON match report to this file");
  cv->add_option("--config", co.config_path, "JSON config file; flags override its values");
  cv->add_flag("--json", co.json_out, "print a machine-readable summary on stdout");

  GenerateOpts go;
  CLI::App* gen = app.add_subcommand(
      "generate", "Generate a synthetic DOCEL log with a known dynamic-attribute registry");
  gen->add_option("process", go.process, "order-to-delivery or shipping-method")
      ->required()
      ->check(CLI::IsMember({"order-to-delivery", "shipping-method"}));
  gen->add_option("out_dir", go.out_dir, "destination bundle directory")->required();
  go.orders_opt =
      gen->add_option("--orders", go.orders, "number of orders (default 100)")
          ->check(CLI::NonNegativeNumber);
  go.seed_opt = gen->add_option("--seed", go.seed, "random seed (default 1)");
  gen->add_option("--ocel", go.ocel_path, "also write the flattened OCEL JSON to this file");
  go.sparse_opt = gen->add_flag(
      "--sparse", go.sparse, "flatten without repeating unchanged values on later events");
  gen->add_option("--config", go.config_path, "JSON config file; flags override its values");
  gen->add_flag("--json", go.json_out, "print a machine-readable summary on stdout");

  EvaluateOpts eo;
  CLI::App* ev = app.add_subcommand("evaluate", "Score a predicted DOCEL bundle against a gold one");
  ev->add_option("gold_dir", eo.gold_dir, "gold bundle directory")->required();
  ev->add_option("pred_dir", eo.pred_dir, "predicted bundle directory")->required();
  ev->add_option("--mode", eo.mode, "all (default), matching, or assignment")
      ->check(CLI::IsMember({"all", "matching", "assignment"}));
  ev->add_option("--report", eo.report_path, "write the JSON reports to this file");
  ev->add_flag("--json", eo.json_out, "print the JSON reports on stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return kInputError;
  }

  // With --events/--objects the only useful positional is the bundle dir.
  if (cv->parsed() && !co.events_path.empty() && co.out_dir.empty() && !co.input.empty()) {
    co.out_dir = co.input;
    co.input.clear();
  }
  try {
    if (cv->parsed()) {
      if (co.out_dir.empty()) throw Error(Errc::invalid_config, "missing bundle output directory");
      return run_convert(co);
    }
    if (gen->parsed()) return run_generate(go);
    return run_evaluate(eo);
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return e.code() == Errc::io_failure ? kOutputError : kInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
}
