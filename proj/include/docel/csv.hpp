#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace docel {

// Minimal CSV support: comma-separated, double-quote quoting with doubled
// quotes inside quoted fields, rows ending in '\n' ('\r\n' accepted on
// read). Fields containing a comma, quote, or newline are quoted on write;
// everything else is written bare.
std::string csv_escape(const std::string& field);
std::string csv_join(const std::vector<std::string>& fields);

// Parses a whole document. A trailing newline does not produce an empty
// record; an empty document parses to zero records.
std::vector<std::vector<std::string>> parse_csv(const std::string& text);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace docel
