#include "docel/value.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>

namespace docel {

const char* kind_name(ValueKind k) {
  switch (k) {
    case ValueKind::string_: return "string";
    case ValueKind::integer: return "integer";
    case ValueKind::real: return "real";
    case ValueKind::boolean: return "boolean";
    case ValueKind::timestamp: return "timestamp";
  }
  return "string";
}

std::optional<ValueKind> kind_from_name(std::string_view name) {
  if (name == "string") return ValueKind::string_;
  if (name == "integer") return ValueKind::integer;
  if (name == "real") return ValueKind::real;
  if (name == "boolean") return ValueKind::boolean;
  if (name == "timestamp") return ValueKind::timestamp;
  return std::nullopt;
}

std::string canonical_real(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  std::string s(buf, res.ptr);
  if (s.find('.') == std::string::npos && s.find('e') == std::string::npos &&
      s.find("inf") == std::string::npos && s.find("nan") == std::string::npos) {
    s += ".0";
  }
  return s;
}

AttributeValue AttributeValue::string(std::string s) {
  return AttributeValue(ValueKind::string_, std::move(s));
}
AttributeValue AttributeValue::integer(std::int64_t v) {
  return AttributeValue(ValueKind::integer, std::to_string(v));
}
AttributeValue AttributeValue::real(double v) {
  return AttributeValue(ValueKind::real, canonical_real(v));
}
AttributeValue AttributeValue::boolean(bool v) {
  return AttributeValue(ValueKind::boolean, v ? "true" : "false");
}
AttributeValue AttributeValue::timestamp(Timestamp ts) {
  return AttributeValue(ValueKind::timestamp, format_timestamp(ts));
}

std::int64_t AttributeValue::as_integer() const {
  return std::strtoll(text_.c_str(), nullptr, 10);
}
double AttributeValue::as_real() const { return std::strtod(text_.c_str(), nullptr); }
bool AttributeValue::as_boolean() const { return text_ == "true"; }
Timestamp AttributeValue::as_timestamp() const {
  auto ts = parse_timestamp(text_);
  return ts ? *ts : Timestamp{};
}

bool is_boolean_text(std::string_view s) { return s == "true" || s == "false"; }

bool is_integer_text(std::string_view s) {
  if (s.empty()) return false;
  size_t i = 0;
  if (s[0] == '+' || s[0] == '-') i = 1;
  size_t digits = 0;
  for (; i < s.size(); ++i) {
    if (s[i] < '0' || s[i] > '9') return false;
    ++digits;
  }
  return digits >= 1 && digits <= 18;
}

bool is_real_text(std::string_view s) {
  if (s.empty()) return false;
  const char* begin = s.data();
  const char* end = s.data() + s.size();
  double v = 0.0;
  auto res = std::from_chars(begin, end, v);
  return res.ec == std::errc{} && res.ptr == end && std::isfinite(v);
}

RawCell RawCell::from_bool(bool b) {
  RawCell c;
  c.native = Native::boolean;
  c.bvalue = b;
  return c;
}
RawCell RawCell::from_int(std::int64_t v) {
  RawCell c;
  c.native = Native::integer;
  c.ivalue = v;
  return c;
}
RawCell RawCell::from_real(double v) {
  RawCell c;
  c.native = Native::real;
  c.rvalue = v;
  return c;
}
RawCell RawCell::from_text(std::string s) {
  RawCell c;
  c.native = Native::text;
  c.text = std::move(s);
  return c;
}

RawCell RawCell::from_json_string(std::string s) {
  RawCell c;
  c.native = Native::json_string;
  c.text = std::move(s);
  return c;
}

std::vector<ValueKind> cell_candidate_kinds(const RawCell& cell) {
  std::vector<ValueKind> kinds;
  switch (cell.native) {
    case RawCell::Native::boolean:
      kinds = {ValueKind::boolean};
      break;
    case RawCell::Native::integer:
      kinds = {ValueKind::integer, ValueKind::real};
      break;
    case RawCell::Native::real:
      kinds = {ValueKind::real};
      break;
    case RawCell::Native::text: {
      if (is_boolean_text(cell.text)) kinds.push_back(ValueKind::boolean);
      if (is_integer_text(cell.text)) kinds.push_back(ValueKind::integer);
      if (is_real_text(cell.text)) kinds.push_back(ValueKind::real);
      if (parse_timestamp(cell.text)) kinds.push_back(ValueKind::timestamp);
      break;
    }
    case RawCell::Native::json_string:
      if (parse_timestamp(cell.text)) kinds.push_back(ValueKind::timestamp);
      break;
  }
  kinds.push_back(ValueKind::string_);
  return kinds;
}

ValueKind infer_kind(const std::vector<RawCell>& cells) {
  static constexpr ValueKind precedence[] = {ValueKind::boolean, ValueKind::integer,
                                             ValueKind::real, ValueKind::timestamp};
  size_t best_count = 0;
  ValueKind best = ValueKind::string_;
  for (ValueKind k : precedence) {
    size_t count = 0;
    for (const RawCell& cell : cells) {
      auto kinds = cell_candidate_kinds(cell);
      if (std::find(kinds.begin(), kinds.end(), k) != kinds.end()) ++count;
    }
    if (count > best_count) {
      best_count = count;
      best = k;
    }
  }
  // Majority rule: a typed kind must cover more than half the cells, else
  // the whole group stays string. Dissenting cells fall back in coercion.
  if (best_count * 2 > cells.size()) return best;
  return ValueKind::string_;
}

AttributeValue coerce_cell(const RawCell& cell, ValueKind kind) {
  auto kinds = cell_candidate_kinds(cell);
  if (std::find(kinds.begin(), kinds.end(), kind) == kinds.end()) {
    kind = ValueKind::string_;
  }
  switch (cell.native) {
    case RawCell::Native::boolean:
      if (kind == ValueKind::boolean) return AttributeValue::boolean(cell.bvalue);
      return AttributeValue::string(cell.bvalue ? "true" : "false");
    case RawCell::Native::integer:
      if (kind == ValueKind::integer) return AttributeValue::integer(cell.ivalue);
      if (kind == ValueKind::real)
        return AttributeValue::real(static_cast<double>(cell.ivalue));
      return AttributeValue::string(std::to_string(cell.ivalue));
    case RawCell::Native::real:
      if (kind == ValueKind::real) return AttributeValue::real(cell.rvalue);
      return AttributeValue::string(canonical_real(cell.rvalue));
    case RawCell::Native::text:
    case RawCell::Native::json_string:
      break;
  }
  switch (kind) {
    case ValueKind::boolean:
      return AttributeValue::boolean(cell.text == "true");
    case ValueKind::integer:
      return AttributeValue::integer(std::strtoll(cell.text.c_str(), nullptr, 10));
    case ValueKind::real:
      return AttributeValue::real(std::strtod(cell.text.c_str(), nullptr));
    case ValueKind::timestamp:
      return AttributeValue::timestamp(*parse_timestamp(cell.text));
    case ValueKind::string_:
      break;
  }
  return AttributeValue::string(cell.text);
}

}  // namespace docel
