#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "docel/timeutil.hpp"

namespace docel {

enum class ValueKind { string_, integer, real, boolean, timestamp };

const char* kind_name(ValueKind k);
std::optional<ValueKind> kind_from_name(std::string_view name);

// A typed attribute value. Equality and ordering are defined on the pair
// (kind, canonical text), so 1 != 1.0 != "1" but two reals render-equal are
// equal regardless of how they were produced.
class AttributeValue {
 public:
  static AttributeValue string(std::string s);
  static AttributeValue integer(std::int64_t v);
  static AttributeValue real(double v);
  static AttributeValue boolean(bool v);
  static AttributeValue timestamp(Timestamp ts);

  ValueKind kind() const { return kind_; }
  const std::string& text() const { return text_; }

  // Accessors assume the matching kind; they re-parse the canonical text.
  std::int64_t as_integer() const;
  double as_real() const;
  bool as_boolean() const;
  Timestamp as_timestamp() const;

  friend bool operator==(const AttributeValue& a, const AttributeValue& b) {
    return a.kind_ == b.kind_ && a.text_ == b.text_;
  }
  friend bool operator<(const AttributeValue& a, const AttributeValue& b) {
    if (a.kind_ != b.kind_) return a.kind_ < b.kind_;
    return a.text_ < b.text_;
  }

 private:
  AttributeValue(ValueKind k, std::string t) : kind_(k), text_(std::move(t)) {}
  ValueKind kind_ = ValueKind::string_;
  std::string text_;
};

// Canonical text for a double: shortest round-trip form, with ".0" appended
// when the result would otherwise read as an integer. "inf"/"nan" stay bare.
std::string canonical_real(double v);

// Textual predicates used by kind inference. Leading/trailing whitespace is
// not tolerated; these classify exact cell contents.
bool is_boolean_text(std::string_view s);
bool is_integer_text(std::string_view s);  // optional sign, <= 18 digits
bool is_real_text(std::string_view s);

// One raw cell on its way into kind inference. Exactly one alternative is
// set; `absent` cells (empty string, JSON null) never take part. CSV text
// (`text`) may be read as any kind its spelling supports; JSON strings
// (`json_string`) only as timestamp or string, because JSON expresses
// numbers and booleans natively and "100" must stay a string.
struct RawCell {
  enum class Native { text, json_string, boolean, integer, real };
  Native native = Native::text;
  bool bvalue = false;
  std::int64_t ivalue = 0;
  double rvalue = 0.0;
  std::string text;

  static RawCell from_bool(bool b);
  static RawCell from_int(std::int64_t v);
  static RawCell from_real(double v);
  static RawCell from_text(std::string s);
  static RawCell from_json_string(std::string s);
};

// Candidate kinds a single cell supports (always includes string_).
std::vector<ValueKind> cell_candidate_kinds(const RawCell& cell);

// Chooses the typed kind supported by the most cells, ties going to the
// earlier of [boolean, integer, real, timestamp], provided it covers a
// majority of the cells; otherwise the group is string.
ValueKind infer_kind(const std::vector<RawCell>& cells);

// Coerces a cell to `kind`; falls back to a string value when the cell does
// not support it.
AttributeValue coerce_cell(const RawCell& cell, ValueKind kind);

}  // namespace docel
