// Copyright medselect contributors. Licensed under the terms of the Apache 2.0 license.
// See LICENSE in the project root.

#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace medselect {

struct TermEntry {
  std::string term;
  double weight = 0.0;

  bool operator==(const TermEntry&) const = default;
};

/// Weighted keyword set in the vector-space sense: terms are unique and
/// lowercase, weights lie in [0,1]. Entries are kept sorted by term, so
/// equality is order-independent by construction and serialization is
/// canonical.
class TermVector {
 public:
  TermVector() = default;

  /// Validating constructor: lowercases terms, rejects empty terms and
  /// out-of-range weights, deduplicates by keeping the first occurrence
  /// (conflicting duplicate weights are an error).
  static TermVector from_entries(const std::vector<TermEntry>& raw);

  /// Trusted path for entries that already satisfy every invariant
  /// (lowercase, unique, in-range). Sorts, asserts nothing.
  static TermVector from_canonical(std::vector<TermEntry> entries);

  const std::vector<TermEntry>& entries() const noexcept { return entries_; }
  bool empty() const noexcept { return entries_.empty(); }
  std::size_t size() const noexcept { return entries_.size(); }

  /// Pointer to the weight for `term`, or nullptr when absent.
  const double* find(std::string_view term) const noexcept;

  bool contains(std::string_view term) const noexcept { return find(term) != nullptr; }

  bool operator==(const TermVector&) const = default;

 private:
  std::vector<TermEntry> entries_;  // sorted by term
};

/// validate_term_vector is the canonical entry point named by the profile
/// schema; identical to TermVector::from_entries.
TermVector validate_term_vector(const std::vector<TermEntry>& raw);

struct AlignedPair {
  std::vector<std::string> vocabulary;  // sorted union of both term sets
  std::vector<double> left;             // weights of `u` over vocabulary, 0 where absent
  std::vector<double> right;            // weights of `s` over vocabulary, 0 where absent
};

/// Homogenizes two vectors over their common vocabulary: absent terms
/// contribute weight zero on the side that lacks them.
AlignedPair align_vectors(const TermVector& u, const TermVector& s);

/// Lowercased maximal [a-z0-9] runs. Shared by query parsing and the mock
/// source pattern matcher.
std::vector<std::string> tokenize_simple(std::string_view text);

std::string to_lower(std::string_view text);

}  // namespace medselect
