// Copyright medselect contributors. Licensed under the terms of the Apache 2.0 license.
// See LICENSE in the project root.

#include "medselect/error.hpp"

namespace medselect {

const char* errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::weight_out_of_range: return "weight_out_of_range";
    case Errc::empty_term: return "empty_term";
    case Errc::duplicate_term: return "duplicate_term";
    case Errc::invalid_params: return "invalid_params";
    case Errc::empty_source_set: return "empty_source_set";
    case Errc::no_goals: return "no_goals";
    case Errc::missing_quality_value: return "missing_quality_value";
    case Errc::unknown_criterion: return "unknown_criterion";
    case Errc::not_found: return "not_found";
    case Errc::unknown_source: return "unknown_source";
    case Errc::conflict: return "conflict";
    case Errc::storage_failure: return "storage_failure";
    case Errc::validation_failure: return "validation_failure";
    case Errc::empty_corpus: return "empty_corpus";
    case Errc::unreachable: return "unreachable";
    case Errc::invalid_metadata: return "invalid_metadata";
    case Errc::port_in_use: return "port_in_use";
  }
  return "unknown";
}

}  // namespace medselect
