// Copyright medselect contributors. Licensed under the terms of the Apache 2.0 license.
// See LICENSE in the project root.

#pragma once

#include <filesystem>
#include <mutex>
#include <span>
#include <string>
#include <vector>

#include "medselect/error.hpp"
#include "medselect/profile.hpp"

namespace medselect {

/// Document-per-profile knowledge base:
///
///   <root>/users/<id>.json
///   <root>/sources/<id>.json
///   <root>/criteria.json
///
/// Writes go through an atomic replace (write temp, fsync, rename) and are
/// serialized store-wide; readers see either the old or the new document,
/// never a torn one.
class ProfileStore {
 public:
  explicit ProfileStore(std::filesystem::path root);

  const std::filesystem::path& root() const noexcept { return root_; }

  // CRUD. Ids double as filename stems and are restricted to
  // [A-Za-z0-9._-] with a leading alphanumeric.
  std::string upsert_user(const UserProfile& user);
  std::string upsert_source(const SourceProfile& source);
  UserProfile get_user(const std::string& id) const;
  SourceProfile get_source(const std::string& id) const;
  void delete_user(const std::string& id);    // idempotent
  void delete_source(const std::string& id);  // idempotent
  std::vector<std::string> list_users() const;    // ascending
  std::vector<std::string> list_sources() const;  // ascending
  std::vector<SourceProfile> load_all_sources() const;

  void put_criteria(std::span<const CriterionSpec> criteria);
  std::vector<CriterionSpec> criteria() const;  // empty when absent

  /// Appends to the user's history. A timestamp older than the last record
  /// is clamped to it (with a diagnostic) so the history stays ordered.
  void record_interaction(const std::string& user_id, InteractionRecord record,
                          DiagnosticLog* diag = nullptr);

  /// Learning step: +1 ratings multiply the weights of goal terms present
  /// in the rated source's content by 1.1 (clamped to 1); goal terms
  /// present only in -1-rated content are multiplied by 0.9. The session
  /// must exist in the history, be the user's current session, and the
  /// rated sources must have been selected in it.
  SessionProfile apply_feedback(const std::string& user_id, const std::string& session_id,
                                std::span<const Rating> ratings,
                                DiagnosticLog* diag = nullptr);

  /// Greedy single-pass clustering of users (ascending id) by combined
  /// similarity of their domains of interest against community centroids.
  std::vector<CommunityProfile> build_communities(double threshold) const;

 private:
  std::filesystem::path user_path(const std::string& id) const;
  std::filesystem::path source_path(const std::string& id) const;
  void write_document(const std::filesystem::path& path, const std::string& body);
  static std::string read_document(const std::filesystem::path& path, const char* kind,
                                   const std::string& id);

  std::filesystem::path root_;
  mutable std::mutex write_mutex_;
};

}  // namespace medselect
