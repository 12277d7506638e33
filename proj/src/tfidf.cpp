// Copyright medselect contributors. Licensed under the terms of the Apache 2.0 license.
// See LICENSE in the project root.

#include "medselect/tfidf.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <unordered_set>

namespace medselect {
namespace {

// English and French function words; tokens shorter than 3 characters are
// dropped before this list is consulted.
const std::unordered_set<std::string>& stop_words() {
  static const std::unordered_set<std::string> words = {
      // English
      "the", "and", "for", "are", "but", "not", "you", "all", "any", "can",
      "her", "his", "its", "our", "out", "was", "were", "will", "with",
      "that", "this", "they", "them", "then", "than", "from", "have", "has",
      "had", "been", "being", "what", "when", "where", "which", "while",
      "who", "whom", "why", "how", "would", "could", "should", "there",
      "their", "these", "those", "into", "onto", "over", "under", "about",
      "after", "before", "between", "because", "does", "doing", "done",
      "each", "few", "more", "most", "other", "some", "such", "only", "own",
      "same", "very", "just", "also",
      // French
      "les", "des", "une", "aux", "ces", "cet", "cette", "dans", "pour",
      "sur", "avec", "est", "sont", "mais", "comme", "plus", "pas", "par",
      "vous", "nous", "ils", "elles", "leur", "leurs", "son", "ses", "ont",
      "aussi", "etre", "avoir", "fait", "tout", "tous", "toute", "toutes",
      "qui", "que", "quoi", "dont", "ainsi", "alors", "entre", "sans",
      "sous", "chez", "apres", "avant", "donc", "elle", "lui", "mes", "tes",
      "nos", "vos", "notre", "votre", "cela",
  };
  return words;
}

}  // namespace

std::vector<std::string> tfidf_tokens(std::string_view text) {
  std::vector<std::string> tokens = tokenize_simple(text);
  std::erase_if(tokens, [](const std::string& t) {
    return t.size() < 3 || stop_words().contains(t);
  });
  return tokens;
}

TermVector extract_content_vector(const Corpus& corpus, int top_k, DiagnosticLog* diag) {
  if (corpus.documents.empty())
    raise(Errc::empty_corpus, "content extraction requires at least one document");
  if (top_k <= 0) raise(Errc::invalid_params, "top_k must be positive");
  {
    std::set<std::string> ids;
    for (const Document& doc : corpus.documents)
      if (!ids.insert(doc.doc_id).second)
        raise(Errc::validation_failure, "duplicate doc_id in corpus", doc.doc_id);
  }

  std::map<std::string, long> occurrences;  // corpus-wide term counts
  std::map<std::string, long> doc_freq;
  for (const Document& doc : corpus.documents) {
    std::set<std::string> seen;
    for (const std::string& token : tfidf_tokens(doc.text)) {
      ++occurrences[token];
      if (seen.insert(token).second) ++doc_freq[token];
    }
  }
  if (occurrences.empty()) {
    note(diag, "corpus contains no indexable terms");
    return TermVector{};
  }

  long max_occurrences = 0;
  for (const auto& [term, count] : occurrences)
    max_occurrences = std::max(max_occurrences, count);
  const double n_docs = static_cast<double>(corpus.documents.size());

  std::vector<TermEntry> weighted;
  double max_raw = 0.0;
  for (const auto& [term, count] : occurrences) {
    const double tf = static_cast<double>(count) / static_cast<double>(max_occurrences);
    const double idf = std::log(n_docs / static_cast<double>(doc_freq.at(term)));
    const double raw = tf * idf;
    if (raw <= 0.0) continue;
    weighted.push_back(TermEntry{term, raw});
    max_raw = std::max(max_raw, raw);
  }
  if (weighted.empty()) {
    note(diag, "every term scored zero (a term present in all of " +
                   std::to_string(corpus.documents.size()) +
                   " documents has idf 0); returning an empty vector");
    return TermVector{};
  }

  for (TermEntry& e : weighted) e.weight /= max_raw;
  std::sort(weighted.begin(), weighted.end(), [](const TermEntry& a, const TermEntry& b) {
    if (a.weight != b.weight) return a.weight > b.weight;
    return a.term < b.term;
  });
  if (weighted.size() > static_cast<std::size_t>(top_k))
    weighted.resize(static_cast<std::size_t>(top_k));
  return TermVector::from_canonical(std::move(weighted));
}

Corpus load_corpus_dir(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir))
    raise(Errc::empty_corpus, "corpus directory does not exist", dir.string());
  Corpus corpus;
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir))
    if (entry.is_regular_file()) files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  for (const std::filesystem::path& path : files) {
    std::ifstream in(path, std::ios::binary);
    if (!in) raise(Errc::storage_failure, "cannot read corpus file", path.string());
    std::ostringstream text;
    text << in.rdbuf();
    corpus.documents.push_back(Document{path.stem().string(), text.str()});
  }
  if (corpus.documents.empty())
    raise(Errc::empty_corpus, "corpus directory contains no files", dir.string());
  return corpus;
}

}  // namespace medselect
