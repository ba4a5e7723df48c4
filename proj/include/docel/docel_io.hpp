#pragma once

#include <cstddef>
#include <map>
#include <string>

#include "docel/model.hpp"

namespace docel {

struct BundleSummary {
  std::string dir;
  std::size_t event_count = 0;
  std::map<std::string, std::size_t> object_counts;       // per type
  std::map<std::string, std::size_t> dynamic_row_counts;  // per attribute
};

// On-disk layout under one directory:
//   manifest.json          format version, type list, dynamic-attribute
//                          registry (attr -> object type), event attributes
//   events.csv             ID, Activity, Timestamp, one column per type,
//                          then event-attribute columns
//   objects_<type>.csv     ObjectID plus that type's static attributes
//   dyn_<attr>.csv         ValueID, ObjectID, EventID, <attr>
// Type and attribute names are sanitized for filenames ([A-Za-z0-9._-],
// everything else becomes "_"); the manifest carries the exact names.
BundleSummary write_docel(const DocelLog& log, const std::string& dest_dir);

// Reads a bundle back. The registry must agree exactly with the dyn_ files
// present; every dynamic row must cite a known event/object pair of the
// registered type. Row order per object follows event order and consecutive
// values per object must differ.
DocelLog read_docel(const std::string& src_dir);

std::string sanitize_filename_part(const std::string& name);

}  // namespace docel
