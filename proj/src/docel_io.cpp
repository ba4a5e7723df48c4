#include "docel/docel_io.hpp"

#include <algorithm>
#include <filesystem>
#include <set>
#include <vector>

#include <json.hpp>

#include "docel/csv.hpp"
#include "docel/errors.hpp"

namespace fs = std::filesystem;

namespace docel {
namespace {

using ojson = nlohmann::ordered_json;

std::set<std::string> static_attr_names(const DocelLog& log, const std::string& type) {
  std::set<std::string> names;
  for (const auto& [oid, obj] : log.objects) {
    if (obj.type != type) continue;
    for (const auto& [attr, value] : obj.static_attrs) names.insert(attr);
  }
  return names;
}

std::vector<const Event*> ordered_events(const std::vector<Event>& events) {
  std::vector<const Event*> out;
  out.reserve(events.size());
  for (const Event& ev : events) out.push_back(&ev);
  std::stable_sort(out.begin(), out.end(), [](const Event* a, const Event* b) {
    if (a->ts != b->ts) return a->ts < b->ts;
    return id_less(a->eid, b->eid);
  });
  return out;
}

}  // namespace

std::string sanitize_filename_part(const std::string& name) {
  std::string out;
  for (char c : name) {
    bool ok = (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') ||
              c == '.' || c == '_' || c == '-';
    out += ok ? c : '_';
  }
  return out;
}

BundleSummary write_docel(const DocelLog& log, const std::string& dest_dir) {
  std::error_code ec;
  fs::create_directories(dest_dir, ec);
  if (ec) throw Error(Errc::io_failure, "cannot create directory " + dest_dir + ": " + ec.message());

  std::map<std::string, std::string> type_files;  // type -> filename
  std::set<std::string> used_names;
  for (const auto& type : log.object_types) {
    std::string file = "objects_" + sanitize_filename_part(type) + ".csv";
    if (!used_names.insert(file).second) {
      throw Error(Errc::invalid_field, "object types collide after filename sanitization: " + type);
    }
    type_files[type] = file;
  }
  std::map<std::string, std::string> dyn_files;  // attr -> filename
  for (const auto& [attr, table] : log.dynamic_tables) {
    std::string file = "dyn_" + sanitize_filename_part(attr) + ".csv";
    if (!used_names.insert(file).second) {
      throw Error(Errc::invalid_field, "dynamic attributes collide after filename sanitization: " + attr);
    }
    dyn_files[attr] = file;
  }

  ojson manifest;
  manifest["docel_version"] = "1.0";
  ojson types = ojson::array();
  for (const auto& t : log.object_types) types.push_back(t);
  manifest["object_types"] = std::move(types);
  ojson registry = ojson::object();
  for (const auto& [attr, table] : log.dynamic_tables) registry[attr] = table.otype;
  manifest["dynamic_attributes"] = std::move(registry);
  ojson event_attrs = ojson::array();
  for (const auto& a : log.event_attr_names) event_attrs.push_back(a);
  manifest["event_attributes"] = std::move(event_attrs);

  auto path = [&](const std::string& file) { return (fs::path(dest_dir) / file).string(); };
  write_text_file(path("manifest.json"), manifest.dump(2) + "\n");

  std::string events_doc;
  std::vector<std::string> header = {"ID", "Activity", "Timestamp"};
  for (const auto& t : log.object_types) header.push_back(t);
  std::vector<std::string> attr_cols(log.event_attr_names.begin(), log.event_attr_names.end());
  for (const auto& a : attr_cols) header.push_back(a);
  events_doc += csv_join(header);
  auto ordered = ordered_events(log.events);
  for (const Event* ev : ordered) {
    std::vector<std::string> row = {ev->eid, ev->activity, format_timestamp(ev->ts)};
    for (const auto& t : log.object_types) {
      std::string cell;
      for (const std::string& oid : ev->objects) {
        auto obj = log.objects.find(oid);
        if (obj == log.objects.end() || obj->second.type != t) continue;
        if (oid.find(';') != std::string::npos) {
          throw Error(Errc::invalid_field, "object id contains ';' and cannot be stored: " + oid);
        }
        if (!cell.empty()) cell += ';';
        cell += oid;
      }
      row.push_back(std::move(cell));
    }
    for (const auto& a : attr_cols) {
      auto it = ev->attrs.find(a);
      row.push_back(it == ev->attrs.end() ? std::string() : it->second.text());
    }
    events_doc += csv_join(row);
  }
  write_text_file(path("events.csv"), events_doc);

  BundleSummary summary;
  summary.dir = dest_dir;
  summary.event_count = log.events.size();
  for (const auto& t : log.object_types) summary.object_counts[t] = 0;
  for (const auto& [oid, obj] : log.objects) ++summary.object_counts[obj.type];

  for (const auto& t : log.object_types) {
    auto attrs = static_attr_names(log, t);
    std::string doc;
    std::vector<std::string> oheader = {"ObjectID"};
    oheader.insert(oheader.end(), attrs.begin(), attrs.end());
    doc += csv_join(oheader);
    for (const auto& [oid, obj] : log.objects) {
      if (obj.type != t) continue;
      std::vector<std::string> row = {oid};
      for (const auto& a : attrs) {
        auto it = obj.static_attrs.find(a);
        row.push_back(it == obj.static_attrs.end() ? std::string() : it->second.text());
      }
      doc += csv_join(row);
    }
    write_text_file(path(type_files[t]), doc);
  }

  for (const auto& [attr, table] : log.dynamic_tables) {
    std::string doc;
    doc += csv_join({"ValueID", "ObjectID", "EventID", attr});
    for (const auto& row : table.rows) {
      doc += csv_join({row.vid, row.oid, row.eid, row.value.text()});
    }
    write_text_file(path(dyn_files[attr]), doc);
    summary.dynamic_row_counts[attr] = table.rows.size();
  }
  return summary;
}

DocelLog read_docel(const std::string& src_dir) {
  auto path = [&](const std::string& file) { return (fs::path(src_dir) / file).string(); };
  if (!fs::exists(path("manifest.json"))) {
    throw Error(Errc::missing_table, "manifest.json not found in " + src_dir);
  }
  nlohmann::json manifest;
  try {
    manifest = nlohmann::json::parse(read_text_file(path("manifest.json")));
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::malformed_json, std::string("manifest.json: ") + e.what());
  }
  if (!manifest.is_object()) throw Error(Errc::malformed_json, "manifest.json: top level is not an object");
  for (const char* key : {"docel_version", "object_types", "dynamic_attributes", "event_attributes"}) {
    if (!manifest.contains(key)) {
      throw Error(Errc::missing_required_key, std::string(key) + " (at manifest.json)");
    }
  }

  DocelLog log;
  for (const auto& t : manifest["object_types"]) {
    if (!t.is_string()) throw Error(Errc::invalid_field, "manifest object_types entries must be strings");
    log.object_types.insert(t.get<std::string>());
  }
  std::map<std::string, std::string> registry;  // attr -> type
  if (!manifest["dynamic_attributes"].is_object()) {
    throw Error(Errc::invalid_field, "manifest dynamic_attributes must be an object");
  }
  for (auto it = manifest["dynamic_attributes"].begin(); it != manifest["dynamic_attributes"].end(); ++it) {
    if (!it.value().is_string()) {
      throw Error(Errc::invalid_field, "manifest dynamic_attributes values must be strings");
    }
    std::string type = it.value().get<std::string>();
    if (!log.object_types.count(type)) {
      throw Error(Errc::manifest_mismatch,
                  "dynamic attribute " + it.key() + " registered for unknown type " + type);
    }
    registry[it.key()] = type;
  }
  for (const auto& a : manifest["event_attributes"]) {
    if (!a.is_string()) throw Error(Errc::invalid_field, "manifest event_attributes entries must be strings");
    std::string name = a.get<std::string>();
    if (registry.count(name)) {
      throw Error(Errc::manifest_mismatch,
                  "attribute " + name + " is both an event attribute and a dynamic attribute");
    }
    log.event_attr_names.insert(name);
  }

  // The bundle must hold exactly the files the manifest announces.
  std::set<std::string> expected_files = {"manifest.json", "events.csv"};
  std::map<std::string, std::string> type_files, dyn_files;
  for (const auto& t : log.object_types) {
    std::string file = "objects_" + sanitize_filename_part(t) + ".csv";
    type_files[t] = file;
    expected_files.insert(file);
  }
  for (const auto& [attr, type] : registry) {
    std::string file = "dyn_" + sanitize_filename_part(attr) + ".csv";
    dyn_files[attr] = file;
    expected_files.insert(file);
  }
  std::error_code ec;
  for (const auto& entry : fs::directory_iterator(src_dir, ec)) {
    std::string name = entry.path().filename().string();
    bool looks_owned = name == "manifest.json" || name == "events.csv" ||
                       name.rfind("objects_", 0) == 0 || name.rfind("dyn_", 0) == 0;
    if (looks_owned && !expected_files.count(name)) {
      throw Error(Errc::manifest_mismatch, "file " + name + " is not declared by the manifest");
    }
  }
  if (ec) throw Error(Errc::io_failure, "cannot list " + src_dir + ": " + ec.message());

  struct RawObject {
    std::string type;
    std::vector<std::pair<std::string, RawCell>> attrs;
  };
  std::map<std::string, RawObject, IdLess> raw_objects;
  std::map<std::pair<std::string, std::string>, std::vector<RawCell>> obj_groups;
  for (const auto& [type, file] : type_files) {
    if (!fs::exists(path(file))) {
      throw Error(Errc::missing_table, file + " (objects table for type " + type + ")");
    }
    auto rows = parse_csv(read_text_file(path(file)));
    if (rows.empty()) throw Error(Errc::missing_header, file + " has no header row");
    const auto& header = rows[0];
    if (header.empty() || header[0] != "ObjectID") {
      throw Error(Errc::missing_header, file + " must start with an ObjectID column");
    }
    for (size_t r = 1; r < rows.size(); ++r) {
      const auto& row = rows[r];
      auto cell = [&](size_t c) { return c < row.size() ? row[c] : std::string(); };
      std::string oid = cell(0);
      if (oid.empty()) throw Error(Errc::invalid_field, file + " row " + std::to_string(r) + " has empty ObjectID");
      RawObject raw;
      raw.type = type;
      for (size_t c = 1; c < header.size(); ++c) {
        std::string text = cell(c);
        if (text.empty()) continue;
        RawCell rc = RawCell::from_text(text);
        obj_groups[{type, header[c]}].push_back(rc);
        raw.attrs.emplace_back(header[c], std::move(rc));
      }
      if (!raw_objects.emplace(oid, std::move(raw)).second) {
        throw Error(Errc::duplicate_object_id, "object id repeated across objects tables: " + oid);
      }
    }
  }

  if (!fs::exists(path("events.csv"))) throw Error(Errc::missing_table, "events.csv");
  auto event_rows = parse_csv(read_text_file(path("events.csv")));
  if (event_rows.empty()) throw Error(Errc::missing_header, "events.csv has no header row");
  const auto& eheader = event_rows[0];
  auto ecol = [&](const std::string& name) {
    auto it = std::find(eheader.begin(), eheader.end(), name);
    if (it == eheader.end()) {
      throw Error(Errc::missing_header, "events.csv lacks required column " + name);
    }
    return static_cast<size_t>(it - eheader.begin());
  };
  size_t col_id = ecol("ID");
  size_t col_act = ecol("Activity");
  size_t col_ts = ecol("Timestamp");
  std::vector<size_t> type_cols, attr_cols;
  for (size_t c = 0; c < eheader.size(); ++c) {
    if (c == col_id || c == col_act || c == col_ts) continue;
    if (log.object_types.count(eheader[c])) {
      type_cols.push_back(c);
    } else if (registry.count(eheader[c])) {
      throw Error(Errc::manifest_mismatch,
                  "dynamic attribute " + eheader[c] + " appears as an events.csv column");
    } else {
      attr_cols.push_back(c);
      log.event_attr_names.insert(eheader[c]);
    }
  }

  struct RawEvent {
    std::string eid;
    std::string activity;
    Timestamp ts;
    std::vector<std::string> omap;
    std::vector<std::pair<std::string, RawCell>> attrs;
  };
  std::vector<RawEvent> raw_events;
  std::map<std::string, std::vector<RawCell>> event_groups;
  std::set<std::string> seen_eids;
  for (size_t r = 1; r < event_rows.size(); ++r) {
    const auto& row = event_rows[r];
    auto cell = [&](size_t c) { return c < row.size() ? row[c] : std::string(); };
    RawEvent ev;
    ev.eid = cell(col_id);
    if (ev.eid.empty()) throw Error(Errc::invalid_field, "events.csv row " + std::to_string(r) + " has empty ID");
    if (!seen_eids.insert(ev.eid).second) {
      throw Error(Errc::duplicate_event_id, "event id repeated in events.csv: " + ev.eid);
    }
    ev.activity = cell(col_act);
    auto ts = parse_timestamp(cell(col_ts));
    if (!ts) {
      throw Error(Errc::invalid_field, "event " + ev.eid + " has unrecognized Timestamp: " + cell(col_ts));
    }
    ev.ts = *ts;
    for (size_t c : type_cols) {
      std::string text = cell(c);
      size_t pos = 0;
      while (!text.empty()) {
        size_t sep = text.find(';', pos);
        std::string oid = text.substr(pos, sep == std::string::npos ? std::string::npos : sep - pos);
        if (!oid.empty()) {
          auto obj = raw_objects.find(oid);
          if (obj == raw_objects.end()) {
            throw Error(Errc::referential_integrity,
                        "event " + ev.eid + " references undeclared object " + oid);
          }
          if (obj->second.type != eheader[c]) {
            throw Error(Errc::referential_integrity,
                        "event " + ev.eid + " lists object " + oid + " under column " + eheader[c] +
                            " but its type is " + obj->second.type);
          }
          ev.omap.push_back(std::move(oid));
        }
        if (sep == std::string::npos) break;
        pos = sep + 1;
      }
    }
    std::sort(ev.omap.begin(), ev.omap.end(), IdLess{});
    ev.omap.erase(std::unique(ev.omap.begin(), ev.omap.end()), ev.omap.end());
    for (size_t c : attr_cols) {
      std::string text = cell(c);
      if (text.empty()) continue;
      RawCell rc = RawCell::from_text(text);
      event_groups[eheader[c]].push_back(rc);
      ev.attrs.emplace_back(eheader[c], std::move(rc));
    }
    raw_events.push_back(std::move(ev));
  }

  std::map<std::string, ValueKind> event_kinds;
  for (const auto& [attr, cells] : event_groups) event_kinds[attr] = infer_kind(cells);
  std::map<std::pair<std::string, std::string>, ValueKind> obj_kinds;
  for (const auto& [key, cells] : obj_groups) obj_kinds[key] = infer_kind(cells);

  for (auto& [oid, raw] : raw_objects) {
    ObjectInstance obj;
    obj.oid = oid;
    obj.type = raw.type;
    for (auto& [attr, cellv] : raw.attrs) {
      obj.static_attrs.insert({attr, coerce_cell(cellv, obj_kinds.at({raw.type, attr}))});
    }
    log.objects.emplace(oid, std::move(obj));
  }
  for (auto& raw : raw_events) {
    Event ev;
    ev.eid = raw.eid;
    ev.activity = raw.activity;
    ev.ts = raw.ts;
    ev.objects = raw.omap;
    for (auto& [attr, cellv] : raw.attrs) {
      ev.attrs.insert({attr, coerce_cell(cellv, event_kinds.at(attr))});
    }
    log.events.push_back(std::move(ev));
  }
  log.sort_events();

  std::map<std::string, size_t> event_pos;
  for (size_t i = 0; i < log.events.size(); ++i) event_pos[log.events[i].eid] = i;

  for (const auto& [attr, type] : registry) {
    const std::string& file = dyn_files[attr];
    if (!fs::exists(path(file))) {
      throw Error(Errc::missing_table, file + " (dynamic table for attribute " + attr + ")");
    }
    auto rows = parse_csv(read_text_file(path(file)));
    if (rows.empty()) throw Error(Errc::missing_header, file + " has no header row");
    const auto& header = rows[0];
    std::vector<std::string> expect = {"ValueID", "ObjectID", "EventID", attr};
    if (std::vector<std::string>(header.begin(), header.end()) != expect) {
      throw Error(Errc::manifest_mismatch,
                  file + " header must be ValueID,ObjectID,EventID," + attr);
    }
    DynamicTable table;
    table.attr = attr;
    table.otype = type;
    std::vector<RawCell> cells;
    struct PendingRow {
      std::string vid, oid, eid;
      size_t cell_index;
    };
    std::vector<PendingRow> pending;
    std::set<std::string> seen_vids;
    for (size_t r = 1; r < rows.size(); ++r) {
      const auto& row = rows[r];
      auto cell = [&](size_t c) { return c < row.size() ? row[c] : std::string(); };
      PendingRow p{cell(0), cell(1), cell(2), cells.size()};
      if (p.vid.empty() || p.oid.empty() || p.eid.empty()) {
        throw Error(Errc::invalid_field, file + " row " + std::to_string(r) + " has an empty key field");
      }
      if (!seen_vids.insert(p.vid).second) {
        throw Error(Errc::invalid_field, file + " repeats value id " + p.vid);
      }
      std::string text = cell(3);
      if (text.empty()) {
        throw Error(Errc::invalid_field, file + " row " + std::to_string(r) + " has no value");
      }
      auto pos = event_pos.find(p.eid);
      if (pos == event_pos.end()) {
        throw Error(Errc::referential_integrity, file + " cites unknown event " + p.eid);
      }
      auto obj = log.objects.find(p.oid);
      if (obj == log.objects.end()) {
        throw Error(Errc::referential_integrity, file + " cites unknown object " + p.oid);
      }
      if (obj->second.type != type) {
        throw Error(Errc::referential_integrity,
                    file + " cites object " + p.oid + " of type " + obj->second.type +
                        " but the attribute is registered for " + type);
      }
      const Event& ev = log.events[pos->second];
      if (!std::binary_search(ev.objects.begin(), ev.objects.end(), p.oid, IdLess{})) {
        throw Error(Errc::referential_integrity,
                    file + " cites event " + p.eid + " which does not reference object " + p.oid);
      }
      cells.push_back(RawCell::from_text(text));
      pending.push_back(std::move(p));
    }
    ValueKind kind = infer_kind(cells);
    std::stable_sort(pending.begin(), pending.end(), [&](const PendingRow& a, const PendingRow& b) {
      return event_pos.at(a.eid) < event_pos.at(b.eid);
    });
    std::map<std::string, std::pair<std::string, AttributeValue>> last;  // oid -> (eid, value)
    for (const auto& p : pending) {
      AttributeValue value = coerce_cell(cells[p.cell_index], kind);
      auto it = last.find(p.oid);
      if (it != last.end() && it->second.first == p.eid) {
        throw Error(Errc::invalid_field,
                    file + " has two rows for object " + p.oid + " at event " + p.eid);
      }
      if (it != last.end() && it->second.second == value) {
        throw Error(Errc::invalid_field,
                    file + " has consecutive equal values for object " + p.oid + " at event " + p.eid);
      }
      if (it != last.end()) {
        it->second = {p.eid, value};
      } else {
        last.emplace(p.oid, std::make_pair(p.eid, value));
      }
      table.rows.push_back({p.vid, p.oid, p.eid, std::move(value)});
    }
    log.dynamic_tables.emplace(attr, std::move(table));
  }
  return log;
}

}  // namespace docel
