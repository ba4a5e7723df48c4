#pragma once

#include <string>
#include <string_view>

namespace docel {

// Identifier collation: shorter strings first, ties broken lexicographically.
// This makes sequential ids like "e2" sort before "e10" without zero-padding
// and is a total order on arbitrary strings.
inline bool id_less(std::string_view a, std::string_view b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

struct IdLess {
  using is_transparent = void;
  bool operator()(std::string_view a, std::string_view b) const { return id_less(a, b); }
};

}  // namespace docel
