#include "docel/model.hpp"

#include <algorithm>

namespace docel {

void OcelLog::sort_events() {
  std::stable_sort(events.begin(), events.end(), [](const Event& a, const Event& b) {
    if (a.ts != b.ts) return a.ts < b.ts;
    return id_less(a.eid, b.eid);
  });
}

void DocelLog::sort_events() {
  std::stable_sort(events.begin(), events.end(), [](const Event& a, const Event& b) {
    if (a.ts != b.ts) return a.ts < b.ts;
    return id_less(a.eid, b.eid);
  });
}

const ObjectInstance* OcelLog::find_object(const std::string& oid) const {
  auto it = objects.find(oid);
  return it == objects.end() ? nullptr : &it->second;
}

std::vector<std::string> OcelLog::refs_of_type(const Event& ev,
                                               const std::string& type) const {
  std::vector<std::string> out;
  for (const std::string& oid : ev.objects) {
    const ObjectInstance* obj = find_object(oid);
    if (obj && obj->type == type) out.push_back(oid);
  }
  return out;
}

const char* match_method_name(MatchMethod m) {
  switch (m) {
    case MatchMethod::unique_candidate: return "unique-candidate";
    case MatchMethod::relation_based: return "relation-based";
    case MatchMethod::name_based: return "name-based";
  }
  return "unique-candidate";
}

std::vector<Violation> validate_ocel(const OcelLog& log) {
  std::vector<Violation> out;
  std::set<std::string> seen_eids;
  for (const Event& ev : log.events) {
    if (!seen_eids.insert(ev.eid).second) {
      out.push_back({"duplicate-event-id", "event id repeated: " + ev.eid});
    }
    for (const std::string& oid : ev.objects) {
      if (!log.objects.count(oid)) {
        out.push_back({"unknown-object-reference",
                       "event " + ev.eid + " references unknown object " + oid});
      }
    }
  }
  for (const auto& [oid, obj] : log.objects) {
    if (!log.object_types.count(obj.type)) {
      out.push_back({"unknown-object-type",
                     "object " + oid + " has unregistered type " + obj.type});
    }
  }
  return out;
}

namespace {

bool events_equal(const std::vector<Event>& a, const std::vector<Event>& b) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i) {
    const Event& x = a[i];
    const Event& y = b[i];
    if (x.eid != y.eid || x.activity != y.activity || x.ts != y.ts ||
        x.objects != y.objects || x.attrs != y.attrs) {
      return false;
    }
  }
  return true;
}

template <typename M>
bool objects_equal(const M& a, const M& b) {
  if (a.size() != b.size()) return false;
  auto ia = a.begin();
  auto ib = b.begin();
  for (; ia != a.end(); ++ia, ++ib) {
    if (ia->first != ib->first) return false;
    const ObjectInstance& x = ia->second;
    const ObjectInstance& y = ib->second;
    if (x.oid != y.oid || x.type != y.type || x.static_attrs != y.static_attrs) {
      return false;
    }
  }
  return true;
}

}  // namespace

bool logs_equal(const OcelLog& a, const OcelLog& b) {
  return events_equal(a.events, b.events) && objects_equal(a.objects, b.objects) &&
         a.object_types == b.object_types && a.event_attr_names == b.event_attr_names;
}

bool logs_equal(const DocelLog& a, const DocelLog& b) {
  if (!events_equal(a.events, b.events) || !objects_equal(a.objects, b.objects) ||
      a.object_types != b.object_types || a.event_attr_names != b.event_attr_names) {
    return false;
  }
  if (a.dynamic_tables.size() != b.dynamic_tables.size()) return false;
  auto ia = a.dynamic_tables.begin();
  auto ib = b.dynamic_tables.begin();
  for (; ia != a.dynamic_tables.end(); ++ia, ++ib) {
    if (ia->first != ib->first) return false;
    const DynamicTable& x = ia->second;
    const DynamicTable& y = ib->second;
    if (x.attr != y.attr || x.otype != y.otype || x.rows.size() != y.rows.size()) {
      return false;
    }
    for (size_t i = 0; i < x.rows.size(); ++i) {
      const DynamicAttributeRow& r = x.rows[i];
      const DynamicAttributeRow& s = y.rows[i];
      if (r.vid != s.vid || r.oid != s.oid || r.eid != s.eid || !(r.value == s.value)) {
        return false;
      }
    }
  }
  return true;
}

}  // namespace docel
