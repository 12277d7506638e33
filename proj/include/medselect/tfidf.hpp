// Copyright medselect contributors. Licensed under the terms of the Apache 2.0 license.
// See LICENSE in the project root.

#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "medselect/error.hpp"
#include "medselect/term_vector.hpp"

namespace medselect {

struct Document {
  std::string doc_id;
  std::string text;

  bool operator==(const Document&) const = default;
};

struct Corpus {
  std::vector<Document> documents;

  bool operator==(const Corpus&) const = default;
};

/// Builds a source content vector from a corpus by TF-IDF:
///   tf(t)  = corpus occurrences of t / occurrences of the most frequent term
///   idf(t) = ln(N / df(t))
/// weights are the raw tf*idf scores normalized by their maximum, so the
/// top term always carries weight 1.0; zero-scored terms are dropped and
/// the top_k survivors are kept (ties broken alphabetically).
///
/// Tokens shorter than 3 characters and a built-in English/French stop-word
/// list are ignored. A corpus whose terms all score zero (e.g. a single
/// document, where every idf is ln(1) = 0) yields an empty vector with a
/// diagnostic.
TermVector extract_content_vector(const Corpus& corpus, int top_k,
                                  DiagnosticLog* diag = nullptr);

/// Tokens used by the extractor, lowercased, length- and stop-word-filtered.
std::vector<std::string> tfidf_tokens(std::string_view text);

/// Reads every regular file in `dir` as one document; doc_id is the
/// filename stem.
Corpus load_corpus_dir(const std::filesystem::path& dir);

}  // namespace medselect
