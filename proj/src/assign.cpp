#include "docel/assign.hpp"

#include <algorithm>
#include <set>

#include "docel/errors.hpp"

namespace docel {

std::vector<DynamicAttributeRow> build_attribute_table(const OcelLog& log, const Match& m) {
  if (!log.object_types.count(m.otype)) {
    throw Error(Errc::unknown_object_type, m.otype + " is not an object type of this log");
  }
  std::vector<const Event*> ordered;
  ordered.reserve(log.events.size());
  for (const Event& ev : log.events) ordered.push_back(&ev);
  std::stable_sort(ordered.begin(), ordered.end(), [](const Event* a, const Event* b) {
    if (a->ts != b->ts) return a->ts < b->ts;
    return id_less(a->eid, b->eid);
  });

  std::vector<DynamicAttributeRow> rows;
  std::map<std::string, AttributeValue> last;  // per oid
  std::size_t next_vid = 1;
  for (const Event* ev : ordered) {
    auto it = ev->attrs.find(m.attr);
    if (it == ev->attrs.end()) continue;
    auto refs = log.refs_of_type(*ev, m.otype);
    if (refs.size() != 1) {
      throw Error(Errc::cooccurrence_violated,
                  "event " + ev->eid + " carries " + m.attr + " but references " +
                      std::to_string(refs.size()) + " instances of " + m.otype);
    }
    const std::string& oid = refs[0];
    auto seen = last.find(oid);
    if (seen != last.end() && seen->second == it->second) continue;
    rows.push_back({"v" + std::to_string(next_vid++), oid, ev->eid, it->second});
    if (seen != last.end()) {
      seen->second = it->second;
    } else {
      last.emplace(oid, it->second);
    }
  }
  return rows;
}

DocelLog transform(const OcelLog& log, const std::vector<Match>& matches) {
  std::set<std::string> attrs;
  for (const Match& m : matches) {
    if (!attrs.insert(m.attr).second) {
      throw Error(Errc::precondition_violated, "attribute matched twice: " + m.attr);
    }
  }
  DocelLog out;
  out.objects = log.objects;
  out.object_types = log.object_types;
  for (const auto& name : log.event_attr_names) {
    if (!attrs.count(name)) out.event_attr_names.insert(name);
  }
  for (const Match& m : matches) {
    DynamicTable table;
    table.attr = m.attr;
    table.otype = m.otype;
    table.rows = build_attribute_table(log, m);
    out.dynamic_tables.emplace(m.attr, std::move(table));
  }
  out.events.reserve(log.events.size());
  for (const Event& ev : log.events) {
    Event copy = ev;
    for (const auto& a : attrs) copy.attrs.erase(a);
    out.events.push_back(std::move(copy));
  }
  out.sort_events();
  return out;
}

}  // namespace docel
