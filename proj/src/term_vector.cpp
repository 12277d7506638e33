// Copyright medselect contributors. Licensed under the terms of the Apache 2.0 license.
// See LICENSE in the project root.

#include "medselect/term_vector.hpp"

#include <algorithm>
#include <cctype>

#include "medselect/error.hpp"

namespace medselect {

std::string to_lower(std::string_view text) {
  std::string out(text);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

TermVector TermVector::from_entries(const std::vector<TermEntry>& raw) {
  std::vector<TermEntry> normalized;
  normalized.reserve(raw.size());
  for (const TermEntry& e : raw) {
    if (e.term.empty())
      raise(Errc::empty_term, "term vector entry has an empty term");
    if (!(e.weight >= 0.0 && e.weight <= 1.0))
      raise(Errc::weight_out_of_range,
            "weight out of range [0,1] for term '" + e.term + "'",
            std::to_string(e.weight));
    std::string term = to_lower(e.term);
    auto dup = std::find_if(normalized.begin(), normalized.end(),
                            [&](const TermEntry& n) { return n.term == term; });
    if (dup != normalized.end()) {
      if (dup->weight != e.weight)
        raise(Errc::duplicate_term,
              "duplicate term '" + term + "' with conflicting weights");
      continue;  // same weight: keep first occurrence
    }
    normalized.push_back(TermEntry{std::move(term), e.weight});
  }
  return from_canonical(std::move(normalized));
}

TermVector TermVector::from_canonical(std::vector<TermEntry> entries) {
  std::sort(entries.begin(), entries.end(),
            [](const TermEntry& a, const TermEntry& b) { return a.term < b.term; });
  TermVector v;
  v.entries_ = std::move(entries);
  return v;
}

const double* TermVector::find(std::string_view term) const noexcept {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), term,
                             [](const TermEntry& e, std::string_view t) { return e.term < t; });
  if (it != entries_.end() && it->term == term) return &it->weight;
  return nullptr;
}

TermVector validate_term_vector(const std::vector<TermEntry>& raw) {
  return TermVector::from_entries(raw);
}

AlignedPair align_vectors(const TermVector& u, const TermVector& s) {
  AlignedPair out;
  const auto& a = u.entries();
  const auto& b = s.entries();
  out.vocabulary.reserve(a.size() + b.size());
  out.left.reserve(a.size() + b.size());
  out.right.reserve(a.size() + b.size());

  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j >= b.size() || (i < a.size() && a[i].term < b[j].term)) {
      out.vocabulary.push_back(a[i].term);
      out.left.push_back(a[i].weight);
      out.right.push_back(0.0);
      ++i;
    } else if (i >= a.size() || b[j].term < a[i].term) {
      out.vocabulary.push_back(b[j].term);
      out.left.push_back(0.0);
      out.right.push_back(b[j].weight);
      ++j;
    } else {
      out.vocabulary.push_back(a[i].term);
      out.left.push_back(a[i].weight);
      out.right.push_back(b[j].weight);
      ++i;
      ++j;
    }
  }
  return out;
}

std::vector<std::string> tokenize_simple(std::string_view text) {
  std::vector<std::string> tokens;
  std::string current;
  for (char ch : text) {
    unsigned char c = static_cast<unsigned char>(ch);
    if (std::isalnum(c)) {
      current.push_back(static_cast<char>(std::tolower(c)));
    } else if (!current.empty()) {
      tokens.push_back(std::move(current));
      current.clear();
    }
  }
  if (!current.empty()) tokens.push_back(std::move(current));
  return tokens;
}

}  // namespace medselect
