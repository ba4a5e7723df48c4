#include "docel/ocel_io.hpp"

#include <algorithm>
#include <map>
#include <vector>

#include <json.hpp>

#include "docel/csv.hpp"
#include "docel/errors.hpp"

namespace docel {
namespace {

using ojson = nlohmann::ordered_json;

RawCell cell_from_json(const nlohmann::json& v, const std::string& path) {
  if (v.is_boolean()) return RawCell::from_bool(v.get<bool>());
  if (v.is_number_integer()) return RawCell::from_int(v.get<std::int64_t>());
  if (v.is_number_unsigned()) {
    auto u = v.get<std::uint64_t>();
    if (u <= static_cast<std::uint64_t>(INT64_MAX)) {
      return RawCell::from_int(static_cast<std::int64_t>(u));
    }
    return RawCell::from_real(static_cast<double>(u));
  }
  if (v.is_number_float()) return RawCell::from_real(v.get<double>());
  if (v.is_string()) return RawCell::from_json_string(v.get<std::string>());
  throw Error(Errc::invalid_field, "attribute value at " + path +
                                       " must be a scalar, got " + std::string(v.type_name()));
}

// Raw attribute cells collected per group before kind inference. Null and
// empty-string values are absent and never reach a group.
struct CellGroups {
  std::map<std::string, std::vector<RawCell>> event_groups;                 // attr
  std::map<std::pair<std::string, std::string>, std::vector<RawCell>> obj_groups;  // (type, attr)
};

ojson value_to_json(const AttributeValue& v) {
  switch (v.kind()) {
    case ValueKind::string_: return v.text();
    case ValueKind::integer: return v.as_integer();
    case ValueKind::real: return v.as_real();
    case ValueKind::boolean: return v.as_boolean();
    case ValueKind::timestamp: return v.text();
  }
  return v.text();
}

}  // namespace

OcelLog parse_ocel_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::malformed_json, e.what());
  }
  if (!doc.is_object()) throw Error(Errc::malformed_json, "top level is not an object");
  for (const char* key : {"ocel:global-log", "ocel:events", "ocel:objects"}) {
    if (!doc.contains(key)) {
      throw Error(Errc::missing_required_key, std::string(key) + " (at document root)");
    }
  }

  OcelLog log;
  const auto& global = doc["ocel:global-log"];
  if (global.is_object()) {
    if (global.contains("ocel:version") && global["ocel:version"].is_string()) {
      log.meta["version"] = global["ocel:version"].get<std::string>();
    }
    if (global.contains("ocel:attribute-names")) {
      for (const auto& n : global["ocel:attribute-names"]) {
        if (n.is_string()) log.event_attr_names.insert(n.get<std::string>());
      }
    }
    if (global.contains("ocel:object-types")) {
      for (const auto& n : global["ocel:object-types"]) {
        if (n.is_string()) log.object_types.insert(n.get<std::string>());
      }
    }
  }

  CellGroups groups;
  struct RawObject {
    std::string type;
    std::vector<std::pair<std::string, RawCell>> attrs;
  };
  std::map<std::string, RawObject, IdLess> raw_objects;
  const auto& objects = doc["ocel:objects"];
  if (!objects.is_object()) throw Error(Errc::invalid_field, "ocel:objects must be an object");
  for (auto it = objects.begin(); it != objects.end(); ++it) {
    const std::string& oid = it.key();
    const auto& body = it.value();
    std::string path = "ocel:objects/" + oid;
    if (!body.is_object()) throw Error(Errc::invalid_field, path + " must be an object");
    if (!body.contains("ocel:type") || !body["ocel:type"].is_string()) {
      throw Error(Errc::missing_required_key, "ocel:type (at " + path + ")");
    }
    RawObject raw;
    raw.type = body["ocel:type"].get<std::string>();
    if (body.contains("ocel:ovmap")) {
      const auto& ovmap = body["ocel:ovmap"];
      if (!ovmap.is_object()) throw Error(Errc::invalid_field, path + "/ocel:ovmap must be an object");
      for (auto a = ovmap.begin(); a != ovmap.end(); ++a) {
        if (a.value().is_null()) continue;
        if (a.value().is_string() && a.value().get<std::string>().empty()) continue;
        RawCell cell = cell_from_json(a.value(), path + "/ocel:ovmap/" + a.key());
        groups.obj_groups[{raw.type, a.key()}].push_back(cell);
        raw.attrs.emplace_back(a.key(), std::move(cell));
      }
    }
    raw_objects.emplace(oid, std::move(raw));
  }

  struct RawEvent {
    std::string eid;
    std::string activity;
    Timestamp ts;
    std::vector<std::string> omap;
    std::vector<std::pair<std::string, RawCell>> attrs;
  };
  std::vector<RawEvent> raw_events;
  const auto& events = doc["ocel:events"];
  if (!events.is_object()) throw Error(Errc::invalid_field, "ocel:events must be an object");
  for (auto it = events.begin(); it != events.end(); ++it) {
    const std::string& eid = it.key();
    const auto& body = it.value();
    std::string path = "ocel:events/" + eid;
    if (!body.is_object()) throw Error(Errc::invalid_field, path + " must be an object");
    for (const char* key : {"ocel:activity", "ocel:timestamp", "ocel:omap", "ocel:vmap"}) {
      if (!body.contains(key)) {
        throw Error(Errc::missing_required_key, std::string(key) + " (at " + path + ")");
      }
    }
    RawEvent ev;
    ev.eid = eid;
    if (!body["ocel:activity"].is_string()) {
      throw Error(Errc::invalid_field, path + "/ocel:activity must be a string");
    }
    ev.activity = body["ocel:activity"].get<std::string>();
    if (!body["ocel:timestamp"].is_string()) {
      throw Error(Errc::invalid_field, path + "/ocel:timestamp must be a string");
    }
    auto ts = parse_timestamp(body["ocel:timestamp"].get<std::string>());
    if (!ts) {
      throw Error(Errc::invalid_field, path + "/ocel:timestamp is not a recognized date-time: " +
                                           body["ocel:timestamp"].get<std::string>());
    }
    ev.ts = *ts;
    if (!body["ocel:omap"].is_array()) {
      throw Error(Errc::invalid_field, path + "/ocel:omap must be an array");
    }
    for (const auto& o : body["ocel:omap"]) {
      if (!o.is_string()) throw Error(Errc::invalid_field, path + "/ocel:omap entries must be strings");
      std::string oid = o.get<std::string>();
      if (!raw_objects.count(oid)) {
        throw Error(Errc::unknown_object_reference,
                    "event " + eid + " references undeclared object " + oid);
      }
      ev.omap.push_back(std::move(oid));
    }
    std::sort(ev.omap.begin(), ev.omap.end(), IdLess{});
    ev.omap.erase(std::unique(ev.omap.begin(), ev.omap.end()), ev.omap.end());
    const auto& vmap = body["ocel:vmap"];
    if (!vmap.is_object()) throw Error(Errc::invalid_field, path + "/ocel:vmap must be an object");
    for (auto a = vmap.begin(); a != vmap.end(); ++a) {
      if (a.value().is_null()) continue;
      if (a.value().is_string() && a.value().get<std::string>().empty()) continue;
      RawCell cell = cell_from_json(a.value(), path + "/ocel:vmap/" + a.key());
      groups.event_groups[a.key()].push_back(cell);
      ev.attrs.emplace_back(a.key(), std::move(cell));
    }
    raw_events.push_back(std::move(ev));
  }

  std::map<std::string, ValueKind> event_kinds;
  for (const auto& [attr, cells] : groups.event_groups) event_kinds[attr] = infer_kind(cells);
  std::map<std::pair<std::string, std::string>, ValueKind> obj_kinds;
  for (const auto& [key, cells] : groups.obj_groups) obj_kinds[key] = infer_kind(cells);

  for (auto& [oid, raw] : raw_objects) {
    ObjectInstance obj;
    obj.oid = oid;
    obj.type = raw.type;
    for (auto& [attr, cell] : raw.attrs) {
      obj.static_attrs.insert({attr, coerce_cell(cell, obj_kinds.at({raw.type, attr}))});
    }
    log.object_types.insert(raw.type);
    log.objects.emplace(oid, std::move(obj));
  }
  for (auto& raw : raw_events) {
    Event ev;
    ev.eid = raw.eid;
    ev.activity = raw.activity;
    ev.ts = raw.ts;
    ev.objects = raw.omap;
    for (auto& [attr, cell] : raw.attrs) {
      ev.attrs.insert({attr, coerce_cell(cell, event_kinds.at(attr))});
      log.event_attr_names.insert(attr);
    }
    log.events.push_back(std::move(ev));
  }
  log.sort_events();
  return log;
}

std::string write_ocel_json(const OcelLog& log) {
  ojson root;
  ojson events = ojson::object();
  std::vector<const Event*> ordered;
  ordered.reserve(log.events.size());
  for (const Event& ev : log.events) ordered.push_back(&ev);
  std::stable_sort(ordered.begin(), ordered.end(), [](const Event* a, const Event* b) {
    if (a->ts != b->ts) return a->ts < b->ts;
    return id_less(a->eid, b->eid);
  });
  for (const Event* ev : ordered) {
    ojson body;
    body["ocel:activity"] = ev->activity;
    body["ocel:omap"] = ev->objects;
    body["ocel:timestamp"] = format_timestamp(ev->ts);
    ojson vmap = ojson::object();
    for (const auto& [attr, value] : ev->attrs) vmap[attr] = value_to_json(value);
    body["ocel:vmap"] = std::move(vmap);
    events[ev->eid] = std::move(body);
  }
  root["ocel:events"] = std::move(events);
  root["ocel:global-event"] = ojson{{"ocel:activity", "__INVALID__"}};
  ojson global;
  ojson attr_names = ojson::array();
  for (const auto& n : log.event_attr_names) attr_names.push_back(n);
  global["ocel:attribute-names"] = std::move(attr_names);
  ojson type_names = ojson::array();
  for (const auto& n : log.object_types) type_names.push_back(n);
  global["ocel:object-types"] = std::move(type_names);
  auto version = log.meta.find("version");
  global["ocel:version"] = version == log.meta.end() ? "1.0" : version->second;
  root["ocel:global-log"] = std::move(global);
  root["ocel:global-object"] = ojson{{"ocel:type", "__INVALID__"}};
  ojson objects = ojson::object();
  for (const auto& [oid, obj] : log.objects) {
    ojson body;
    ojson ovmap = ojson::object();
    for (const auto& [attr, value] : obj.static_attrs) ovmap[attr] = value_to_json(value);
    body["ocel:ovmap"] = std::move(ovmap);
    body["ocel:type"] = obj.type;
    objects[oid] = std::move(body);
  }
  root["ocel:objects"] = std::move(objects);
  return root.dump(2) + "\n";
}

OcelLog parse_ocel_csv(const std::string& events_csv, const std::string& objects_csv) {
  OcelLog log;
  CellGroups groups;

  auto objects_rows = parse_csv(objects_csv);
  if (objects_rows.empty()) throw Error(Errc::missing_header, "objects table has no header row");
  const auto& oheader = objects_rows[0];
  auto ocol = [&](const std::string& name) {
    auto it = std::find(oheader.begin(), oheader.end(), name);
    if (it == oheader.end()) {
      throw Error(Errc::missing_header, "objects table lacks required column " + name);
    }
    return static_cast<size_t>(it - oheader.begin());
  };
  size_t col_oid = ocol("ObjectID");
  size_t col_type = ocol("Type");

  struct RawObject {
    std::string type;
    std::vector<std::pair<std::string, RawCell>> attrs;
  };
  std::map<std::string, RawObject, IdLess> raw_objects;
  for (size_t r = 1; r < objects_rows.size(); ++r) {
    const auto& row = objects_rows[r];
    auto cell = [&](size_t c) { return c < row.size() ? row[c] : std::string(); };
    std::string oid = cell(col_oid);
    if (oid.empty()) throw Error(Errc::invalid_field, "objects table row " + std::to_string(r) + " has empty ObjectID");
    std::string type = cell(col_type);
    if (type.empty()) throw Error(Errc::invalid_field, "object " + oid + " has empty Type");
    RawObject raw;
    raw.type = type;
    for (size_t c = 0; c < oheader.size(); ++c) {
      if (c == col_oid || c == col_type) continue;
      std::string text = cell(c);
      if (text.empty()) continue;
      RawCell rc = RawCell::from_text(text);
      groups.obj_groups[{type, oheader[c]}].push_back(rc);
      raw.attrs.emplace_back(oheader[c], std::move(rc));
    }
    if (!raw_objects.emplace(oid, std::move(raw)).second) {
      throw Error(Errc::duplicate_object_id, "object id repeated in objects table: " + oid);
    }
    log.object_types.insert(type);
  }

  auto event_rows = parse_csv(events_csv);
  if (event_rows.empty()) throw Error(Errc::missing_header, "events table has no header row");
  const auto& eheader = event_rows[0];
  auto ecol = [&](const std::string& name) {
    auto it = std::find(eheader.begin(), eheader.end(), name);
    if (it == eheader.end()) {
      throw Error(Errc::missing_header, "events table lacks required column " + name);
    }
    return static_cast<size_t>(it - eheader.begin());
  };
  size_t col_id = ecol("ID");
  size_t col_act = ecol("Activity");
  size_t col_ts = ecol("Timestamp");
  std::vector<size_t> type_cols;
  std::vector<size_t> attr_cols;
  for (size_t c = 0; c < eheader.size(); ++c) {
    if (c == col_id || c == col_act || c == col_ts) continue;
    if (log.object_types.count(eheader[c])) {
      type_cols.push_back(c);
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
  std::set<std::string> seen_eids;
  for (size_t r = 1; r < event_rows.size(); ++r) {
    const auto& row = event_rows[r];
    auto cell = [&](size_t c) { return c < row.size() ? row[c] : std::string(); };
    RawEvent ev;
    ev.eid = cell(col_id);
    if (ev.eid.empty()) throw Error(Errc::invalid_field, "events table row " + std::to_string(r) + " has empty ID");
    if (!seen_eids.insert(ev.eid).second) {
      throw Error(Errc::duplicate_event_id, "event id repeated in events table: " + ev.eid);
    }
    ev.activity = cell(col_act);
    auto ts = parse_timestamp(cell(col_ts));
    if (!ts) {
      throw Error(Errc::invalid_field,
                  "event " + ev.eid + " has unrecognized Timestamp: " + cell(col_ts));
    }
    ev.ts = *ts;
    for (size_t c : type_cols) {
      std::string text = cell(c);
      size_t pos = 0;
      while (pos <= text.size() && !text.empty()) {
        size_t sep = text.find(';', pos);
        std::string oid = text.substr(pos, sep == std::string::npos ? std::string::npos : sep - pos);
        if (!oid.empty()) {
          auto obj = raw_objects.find(oid);
          if (obj == raw_objects.end()) {
            throw Error(Errc::unknown_object_reference,
                        "event " + ev.eid + " references undeclared object " + oid);
          }
          if (obj->second.type != eheader[c]) {
            throw Error(Errc::invalid_field, "event " + ev.eid + " lists object " + oid +
                                                 " under column " + eheader[c] +
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
      groups.event_groups[eheader[c]].push_back(rc);
      ev.attrs.emplace_back(eheader[c], std::move(rc));
    }
    raw_events.push_back(std::move(ev));
  }

  std::map<std::string, ValueKind> event_kinds;
  for (const auto& [attr, cells] : groups.event_groups) event_kinds[attr] = infer_kind(cells);
  std::map<std::pair<std::string, std::string>, ValueKind> obj_kinds;
  for (const auto& [key, cells] : groups.obj_groups) obj_kinds[key] = infer_kind(cells);

  for (auto& [oid, raw] : raw_objects) {
    ObjectInstance obj;
    obj.oid = oid;
    obj.type = raw.type;
    for (auto& [attr, cell] : raw.attrs) {
      obj.static_attrs.insert({attr, coerce_cell(cell, obj_kinds.at({raw.type, attr}))});
    }
    log.objects.emplace(oid, std::move(obj));
  }
  for (auto& raw : raw_events) {
    Event ev;
    ev.eid = raw.eid;
    ev.activity = raw.activity;
    ev.ts = raw.ts;
    ev.objects = raw.omap;
    for (auto& [attr, cell] : raw.attrs) {
      ev.attrs.insert({attr, coerce_cell(cell, event_kinds.at(attr))});
    }
    log.events.push_back(std::move(ev));
  }
  log.sort_events();
  return log;
}

}  // namespace docel
