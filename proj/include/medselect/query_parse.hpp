// Copyright medselect contributors. Licensed under the terms of the Apache 2.0 license.
// See LICENSE in the project root.

#pragma once

#include <string_view>
#include <unordered_set>

#include "medselect/term_vector.hpp"

namespace medselect {

/// Extracts a goals vector from free query text. Whitespace-separated
/// chunks of the form "term:0.7" carry an explicit weight (out-of-range
/// weights are an error); everything else is tokenized on non-alphanumerics
/// and kept with weight 1.0. Only tokens present in the vocabulary survive.
/// An empty result is legal — the caller falls back to the session goals.
TermVector parse_query(std::string_view query_text,
                       const std::unordered_set<std::string>& vocabulary);

}  // namespace medselect
