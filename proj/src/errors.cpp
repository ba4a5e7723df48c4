#include "docel/errors.hpp"

namespace docel {

const char* code_name(Errc c) {
  switch (c) {
    case Errc::malformed_json: return "malformed-json";
    case Errc::missing_required_key: return "missing-required-key";
    case Errc::invalid_field: return "invalid-field";
    case Errc::unknown_object_reference: return "unknown-object-reference";
    case Errc::duplicate_event_id: return "duplicate-event-id";
    case Errc::duplicate_object_id: return "duplicate-object-id";
    case Errc::missing_header: return "missing-header";
    case Errc::io_failure: return "io-failure";
    case Errc::missing_table: return "missing-table";
    case Errc::manifest_mismatch: return "manifest-mismatch";
    case Errc::referential_integrity: return "referential-integrity";
    case Errc::unknown_attribute: return "unknown-attribute";
    case Errc::unknown_object_type: return "unknown-object-type";
    case Errc::precondition_violated: return "precondition-violated";
    case Errc::reserved_attribute: return "reserved-attribute";
    case Errc::similarity_provider_failure: return "similarity-provider-failure";
    case Errc::cooccurrence_violated: return "cooccurrence-violated";
    case Errc::invalid_params: return "invalid-params";
    case Errc::invalid_config: return "invalid-config";
  }
  return "unknown-error";
}

}  // namespace docel
