#pragma once

#include <vector>

#include "docel/model.hpp"

namespace docel {

// Walks events in (timestamp, event id) order and records one row per value
// change of m.attr on the unique referenced instance of m.otype; the first
// observation for an instance always yields a row, repeats of the current
// value never do. Value ids run v1, v2, ... in emission order.
std::vector<DynamicAttributeRow> build_attribute_table(const OcelLog& log, const Match& m);

// Builds one dynamic table per match and strips the matched attribute names
// from every event; everything else carries over unchanged.
DocelLog transform(const OcelLog& log, const std::vector<Match>& matches);

}  // namespace docel
