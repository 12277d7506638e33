// Copyright medselect contributors. Licensed under the terms of the Apache 2.0 license.
// See LICENSE in the project root.

#include "medselect/query_parse.hpp"

#include <cctype>
#include <cstdlib>
#include <string>
#include <vector>

#include "medselect/error.hpp"

namespace medselect {
namespace {

bool parse_full_double(const std::string& text, double& out) {
  if (text.empty()) return false;
  char* end = nullptr;
  out = std::strtod(text.c_str(), &end);
  return end == text.c_str() + text.size();
}

}  // namespace

TermVector parse_query(std::string_view query_text,
                       const std::unordered_set<std::string>& vocabulary) {
  std::vector<TermEntry> entries;
  auto push = [&](std::string term, double weight) {
    if (!vocabulary.contains(term)) return;
    for (const TermEntry& e : entries)
      if (e.term == term) return;  // first occurrence wins
    entries.push_back(TermEntry{std::move(term), weight});
  };

  std::size_t i = 0;
  while (i < query_text.size()) {
    while (i < query_text.size() && std::isspace(static_cast<unsigned char>(query_text[i]))) ++i;
    std::size_t start = i;
    while (i < query_text.size() && !std::isspace(static_cast<unsigned char>(query_text[i]))) ++i;
    if (i == start) break;
    std::string chunk(query_text.substr(start, i - start));

    const std::size_t colon = chunk.rfind(':');
    double weight = 1.0;
    if (colon != std::string::npos && colon > 0 &&
        parse_full_double(chunk.substr(colon + 1), weight)) {
      if (!(weight >= 0.0 && weight <= 1.0))
        raise(Errc::weight_out_of_range,
              "explicit query weight out of range [0,1]", chunk);
      push(to_lower(chunk.substr(0, colon)), weight);
      continue;
    }
    for (std::string& token : tokenize_simple(chunk)) push(std::move(token), 1.0);
  }
  return TermVector::from_canonical(std::move(entries));
}

}  // namespace medselect
