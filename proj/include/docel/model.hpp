#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "docel/ids.hpp"
#include "docel/timeutil.hpp"
#include "docel/value.hpp"

namespace docel {

struct Event {
  std::string eid;
  std::string activity;
  Timestamp ts;
  std::vector<std::string> objects;  // unique, sorted by id_less
  std::map<std::string, AttributeValue> attrs;

  friend bool operator==(const Event&, const Event&) = default;
};

struct ObjectInstance {
  std::string oid;
  std::string type;
  std::map<std::string, AttributeValue> static_attrs;

  friend bool operator==(const ObjectInstance&, const ObjectInstance&) = default;
};

// An object-centric event log. Events are kept sorted by (timestamp, event
// id); objects are keyed by id. object_types covers both declared and
// observed types; event_attr_names covers declared and observed event
// attribute names.
struct OcelLog {
  std::vector<Event> events;
  std::map<std::string, ObjectInstance, IdLess> objects;
  std::set<std::string> object_types;
  std::set<std::string> event_attr_names;
  std::map<std::string, std::string> meta;  // e.g. "version"; not part of equality

  void sort_events();
  const ObjectInstance* find_object(const std::string& oid) const;
  // Object ids referenced by `ev` that belong to `type`, in reference order.
  std::vector<std::string> refs_of_type(const Event& ev, const std::string& type) const;
};

// One change of a dynamic attribute: at event `eid`, object `oid` took on
// `value`. Rows within a table are ordered by the owning log's event order.
struct DynamicAttributeRow {
  std::string vid;
  std::string oid;
  std::string eid;
  AttributeValue value;
};

struct DynamicTable {
  std::string attr;
  std::string otype;
  std::vector<DynamicAttributeRow> rows;
};

// OCEL plus per-attribute dynamic tables. Dynamic attribute names are
// disjoint from event attribute names; a static object attribute may reuse
// a name (the running processes keep e.g. a per-item Weight alongside a
// per-order running Weight).
struct DocelLog {
  std::vector<Event> events;  // attrs here hold only event-level attributes
  std::map<std::string, ObjectInstance, IdLess> objects;
  std::set<std::string> object_types;
  std::set<std::string> event_attr_names;
  std::map<std::string, DynamicTable> dynamic_tables;  // keyed by attribute name

  void sort_events();
};

enum class MatchMethod { unique_candidate, relation_based, name_based };

const char* match_method_name(MatchMethod m);

struct Match {
  std::string attr;
  std::string otype;
  MatchMethod method = MatchMethod::unique_candidate;
};

struct Violation {
  std::string code;
  std::string message;
};

// Structural checks a parsed log must satisfy beyond what parsing enforces:
// unique ids, known object references, and object types that are used but
// never registered. Registered-but-unused types are fine.
std::vector<Violation> validate_ocel(const OcelLog& log);

bool logs_equal(const OcelLog& a, const OcelLog& b);
bool logs_equal(const DocelLog& a, const DocelLog& b);

}  // namespace docel
