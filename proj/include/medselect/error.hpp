// Copyright medselect contributors. Licensed under the terms of the Apache 2.0 license.
// See LICENSE in the project root.

#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace medselect {

enum class Errc {
  weight_out_of_range,
  empty_term,
  duplicate_term,
  invalid_params,
  empty_source_set,
  no_goals,
  missing_quality_value,
  unknown_criterion,
  not_found,
  unknown_source,
  conflict,
  storage_failure,
  validation_failure,
  empty_corpus,
  unreachable,
  invalid_metadata,
  port_in_use,
};

/// Stable machine-readable name, used verbatim in wire error bodies.
const char* errc_name(Errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message, std::string details = "")
      : std::runtime_error(message), code_(code), details_(std::move(details)) {}

  Errc code() const noexcept { return code_; }
  const std::string& details() const noexcept { return details_; }

 private:
  Errc code_;
  std::string details_;
};

[[noreturn]] inline void raise(Errc code, const std::string& message, std::string details = "") {
  throw Error(code, message, std::move(details));
}

/// Collects non-fatal diagnostics (excluded sources, clamped timestamps, ...).
/// Callers that don't care pass nullptr.
struct DiagnosticLog {
  std::vector<std::string> entries;
  void add(std::string message) { entries.push_back(std::move(message)); }
};

inline void note(DiagnosticLog* log, std::string message) {
  if (log != nullptr) log->add(std::move(message));
}

}  // namespace medselect
