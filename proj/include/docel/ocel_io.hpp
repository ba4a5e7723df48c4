#pragma once

#include <string>

#include "docel/model.hpp"

namespace docel {

// JSON-OCEL 1.0. The reader insists on the mandatory top-level keys and on
// activity/timestamp/omap/vmap for every event; object references must
// resolve. The writer emits a deterministic document: two-space indent,
// object keys sorted, events keyed in (timestamp, event id) order, so equal
// logs serialize to identical bytes.
OcelLog parse_ocel_json(const std::string& text);
std::string write_ocel_json(const OcelLog& log);

// Tabular form: an events table (ID, Activity, Timestamp, one column per
// object type holding ";"-separated oids, remaining columns event
// attributes) plus an objects table (ObjectID, Type, static-attribute
// columns). Object-type columns are recognized by matching headers against
// the types declared in the objects table.
OcelLog parse_ocel_csv(const std::string& events_csv, const std::string& objects_csv);

}  // namespace docel
