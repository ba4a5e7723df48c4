#pragma once

#include <stdexcept>
#include <string>

namespace docel {

// Stable error codes used across the toolkit. The kebab-case names returned
// by code_name() are part of the CLI's diagnostic output.
enum class Errc {
  malformed_json,
  missing_required_key,
  invalid_field,
  unknown_object_reference,
  duplicate_event_id,
  duplicate_object_id,
  missing_header,
  io_failure,
  missing_table,
  manifest_mismatch,
  referential_integrity,
  unknown_attribute,
  unknown_object_type,
  precondition_violated,
  reserved_attribute,
  similarity_provider_failure,
  cooccurrence_violated,
  invalid_params,
  invalid_config,
};

const char* code_name(Errc c);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(std::string(code_name(code)) + ": " + message), code_(code) {}

  Errc code() const { return code_; }

 private:
  Errc code_;
};

}  // namespace docel
