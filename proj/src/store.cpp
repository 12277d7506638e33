// Copyright medselect contributors. Licensed under the terms of the Apache 2.0 license.
// See LICENSE in the project root.

#include "medselect/store.hpp"

#include <fcntl.h>
#include <unistd.h>

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cerrno>
#include <cstring>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "medselect/json_codec.hpp"
#include "medselect/similarity.hpp"

namespace medselect {
namespace fs = std::filesystem;

namespace {

void check_id(const std::string& id) {
  if (id.empty()) raise(Errc::validation_failure, "profile id must be non-empty");
  if (id.size() > 128) raise(Errc::validation_failure, "profile id too long", id);
  if (!std::isalnum(static_cast<unsigned char>(id.front())))
    raise(Errc::validation_failure, "profile id must start with a letter or digit", id);
  for (char c : id) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '.' && c != '_' && c != '-')
      raise(Errc::validation_failure,
            "profile id may only contain letters, digits, '.', '_' and '-'", id);
  }
}

std::vector<std::string> list_stems(const fs::path& dir) {
  std::vector<std::string> ids;
  if (!fs::is_directory(dir)) return ids;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json")
      ids.push_back(entry.path().stem().string());
  }
  std::sort(ids.begin(), ids.end());
  return ids;
}

std::atomic<unsigned> temp_counter{0};

}  // namespace

ProfileStore::ProfileStore(fs::path root) : root_(std::move(root)) {
  std::error_code ec;
  fs::create_directories(root_ / "users", ec);
  fs::create_directories(root_ / "sources", ec);
  if (ec) raise(Errc::storage_failure, "cannot create store directories", ec.message());
}

fs::path ProfileStore::user_path(const std::string& id) const {
  return root_ / "users" / (id + ".json");
}

fs::path ProfileStore::source_path(const std::string& id) const {
  return root_ / "sources" / (id + ".json");
}

void ProfileStore::write_document(const fs::path& path, const std::string& body) {
  const fs::path tmp = path.string() + ".tmp" + std::to_string(::getpid()) + "." +
                       std::to_string(temp_counter.fetch_add(1));
  const int fd = ::open(tmp.c_str(), O_WRONLY | O_CREAT | O_TRUNC, 0644);
  if (fd < 0)
    raise(Errc::storage_failure, "cannot open temp file for writing",
          tmp.string() + ": " + std::strerror(errno));
  std::size_t written = 0;
  while (written < body.size()) {
    const ssize_t n = ::write(fd, body.data() + written, body.size() - written);
    if (n < 0) {
      const int err = errno;
      ::close(fd);
      ::unlink(tmp.c_str());
      raise(Errc::storage_failure, "write failed", std::strerror(err));
    }
    written += static_cast<std::size_t>(n);
  }
  if (::fsync(fd) != 0) {
    const int err = errno;
    ::close(fd);
    ::unlink(tmp.c_str());
    raise(Errc::storage_failure, "fsync failed", std::strerror(err));
  }
  ::close(fd);
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp);
    raise(Errc::storage_failure, "atomic rename failed", ec.message());
  }
}

std::string ProfileStore::read_document(const fs::path& path, const char* kind,
                                        const std::string& id) {
  std::ifstream in(path, std::ios::binary);
  if (!in) raise(Errc::not_found, std::string(kind) + " '" + id + "' not found");
  std::ostringstream body;
  body << in.rdbuf();
  return body.str();
}

std::string ProfileStore::upsert_user(const UserProfile& user) {
  check_id(user.user_id);
  validate(user);
  std::lock_guard lock(write_mutex_);
  write_document(user_path(user.user_id), codec::user_document(user));
  return user.user_id;
}

std::string ProfileStore::upsert_source(const SourceProfile& source) {
  check_id(source.source_id);
  validate(source);
  const std::vector<CriterionSpec> registry = criteria();
  for (const auto& [criterion, value] : source.quality) {
    (void)value;
    const bool known = std::any_of(registry.begin(), registry.end(),
                                   [&](const CriterionSpec& s) { return s.id == criterion; });
    if (!known)
      raise(Errc::validation_failure,
            "quality criterion '" + criterion + "' is not in the criteria registry",
            source.source_id);
  }
  std::lock_guard lock(write_mutex_);
  write_document(source_path(source.source_id), codec::source_document(source));
  return source.source_id;
}

// A stored document that no longer parses or that contradicts its filename
// is a store-integrity failure, not a bad request.
UserProfile ProfileStore::get_user(const std::string& id) const {
  const std::string body = read_document(user_path(id), "user", id);
  UserProfile user;
  try {
    user = codec::parse_user_document(body);
  } catch (const Error& e) {
    raise(Errc::storage_failure, "stored user document '" + id + "' is corrupt", e.what());
  }
  if (user.user_id != id)
    raise(Errc::storage_failure,
          "stored document id '" + user.user_id + "' does not match its filename stem", id);
  return user;
}

SourceProfile ProfileStore::get_source(const std::string& id) const {
  const std::string body = read_document(source_path(id), "source", id);
  SourceProfile source;
  try {
    source = codec::parse_source_document(body);
  } catch (const Error& e) {
    raise(Errc::storage_failure, "stored source document '" + id + "' is corrupt",
          e.what());
  }
  if (source.source_id != id)
    raise(Errc::storage_failure,
          "stored document id '" + source.source_id + "' does not match its filename stem",
          id);
  return source;
}

void ProfileStore::delete_user(const std::string& id) {
  std::lock_guard lock(write_mutex_);
  std::error_code ec;
  fs::remove(user_path(id), ec);
  if (ec) raise(Errc::storage_failure, "cannot delete user document", ec.message());
}

void ProfileStore::delete_source(const std::string& id) {
  std::lock_guard lock(write_mutex_);
  std::error_code ec;
  fs::remove(source_path(id), ec);
  if (ec) raise(Errc::storage_failure, "cannot delete source document", ec.message());
}

std::vector<std::string> ProfileStore::list_users() const { return list_stems(root_ / "users"); }

std::vector<std::string> ProfileStore::list_sources() const {
  return list_stems(root_ / "sources");
}

std::vector<SourceProfile> ProfileStore::load_all_sources() const {
  std::vector<SourceProfile> sources;
  for (const std::string& id : list_sources()) sources.push_back(get_source(id));
  return sources;
}

void ProfileStore::put_criteria(std::span<const CriterionSpec> criteria) {
  std::set<std::string> ids;
  for (const CriterionSpec& spec : criteria) {
    if (spec.id.empty()) raise(Errc::validation_failure, "criterion id must be non-empty");
    if (!ids.insert(spec.id).second)
      raise(Errc::validation_failure, "duplicate criterion id", spec.id);
  }
  std::lock_guard lock(write_mutex_);
  write_document(root_ / "criteria.json", codec::criteria_document(criteria));
}

std::vector<CriterionSpec> ProfileStore::criteria() const {
  const fs::path path = root_ / "criteria.json";
  std::ifstream in(path, std::ios::binary);
  if (!in) return {};
  std::ostringstream body;
  body << in.rdbuf();
  return codec::parse_criteria_document(body.str());
}

void ProfileStore::record_interaction(const std::string& user_id, InteractionRecord record,
                                      DiagnosticLog* diag) {
  validate(record);
  std::lock_guard lock(write_mutex_);
  UserProfile user = get_user(user_id);
  if (!user.history.empty() && record.timestamp < user.history.back().timestamp) {
    note(diag, "interaction timestamp " + record.timestamp.to_string() +
                   " precedes the last history record; clamped to " +
                   user.history.back().timestamp.to_string());
    record.timestamp = user.history.back().timestamp;
  }
  user.history.push_back(std::move(record));
  write_document(user_path(user_id), codec::user_document(user));
}

SessionProfile ProfileStore::apply_feedback(const std::string& user_id,
                                            const std::string& session_id,
                                            std::span<const Rating> ratings,
                                            DiagnosticLog* diag) {
  std::lock_guard lock(write_mutex_);
  UserProfile user = get_user(user_id);

  // Sources selected anywhere in this session (a session may span several
  // selection runs).
  std::set<std::string> selected_in_session;
  bool session_in_history = false;
  for (const InteractionRecord& rec : user.history) {
    if (rec.session_id != session_id) continue;
    session_in_history = true;
    selected_in_session.insert(rec.selected_sources.begin(), rec.selected_sources.end());
  }
  if (!session_in_history)
    raise(Errc::not_found, "session '" + session_id + "' not found in history", user_id);
  if (!user.current_session.has_value() ||
      user.current_session->session_id != session_id)
    raise(Errc::not_found, "session '" + session_id + "' is not the current session",
          user_id);

  for (const Rating& rating : ratings) {
    if (rating.value != 1 && rating.value != -1)
      raise(Errc::validation_failure, "rating must be +1 or -1", rating.source_id);
    if (!selected_in_session.contains(rating.source_id))
      raise(Errc::unknown_source,
            "source '" + rating.source_id + "' was not selected in session '" + session_id +
                "'");
  }
  if (ratings.empty()) return *user.current_session;

  // A term counts as present in a source when it carries positive weight;
  // a zero-weight entry is indistinguishable from an absent term.
  auto present = [](const TermVector& content, const std::string& term) {
    const double* w = content.find(term);
    return w != nullptr && *w > 0.0;
  };

  std::vector<SourceProfile> rated;
  for (const Rating& rating : ratings) {
    try {
      rated.push_back(get_source(rating.source_id));
    } catch (const Error& e) {
      if (e.code() == Errc::not_found)
        raise(Errc::unknown_source,
              "rated source '" + rating.source_id + "' no longer exists");
      throw;
    }
  }

  std::vector<TermEntry> goals = user.current_session->goals.entries();
  for (TermEntry& goal : goals) {
    bool in_positive = false;
    bool in_negative = false;
    for (std::size_t i = 0; i < ratings.size(); ++i) {
      if (!present(rated[i].content, goal.term)) continue;
      (ratings[i].value > 0 ? in_positive : in_negative) = true;
    }
    if (in_positive)
      goal.weight = std::min(1.0, goal.weight * 1.1);
    else if (in_negative)
      goal.weight = std::max(0.0, goal.weight * 0.9);
  }
  user.current_session->goals = TermVector::from_canonical(std::move(goals));

  write_document(user_path(user_id), codec::user_document(user));
  note(diag, "session '" + session_id + "' goals updated from " +
                 std::to_string(ratings.size()) + " rating(s)");
  return *user.current_session;
}

std::vector<CommunityProfile> ProfileStore::build_communities(double threshold) const {
  if (!(threshold >= 0.0 && threshold <= 1.0))
    raise(Errc::invalid_params, "clustering threshold must lie in [0,1]");

  struct Cluster {
    std::vector<std::string> members;
    std::map<std::string, double> weight_sums;
  };
  auto centroid_of = [](const Cluster& cluster) {
    std::vector<TermEntry> entries;
    entries.reserve(cluster.weight_sums.size());
    const double n = static_cast<double>(cluster.members.size());
    for (const auto& [term, sum] : cluster.weight_sums)
      entries.push_back(TermEntry{term, sum / n});
    return TermVector::from_canonical(std::move(entries));
  };

  std::vector<Cluster> clusters;
  for (const std::string& user_id : list_users()) {
    const UserProfile user = get_user(user_id);
    const TermVector& domains = user.domains_of_interest;
    Cluster* home = nullptr;
    for (Cluster& cluster : clusters) {
      const double sim = combined_similarity(domains, centroid_of(cluster), 1.0 / 3.0,
                                             1.0 / 3.0, 1.0 / 3.0);
      if (sim >= threshold) {
        home = &cluster;
        break;  // first matching community wins
      }
    }
    if (home == nullptr) {
      clusters.push_back(Cluster{});
      home = &clusters.back();
    }
    home->members.push_back(user_id);
    for (const TermEntry& e : domains.entries()) home->weight_sums[e.term] += e.weight;
  }

  std::vector<CommunityProfile> communities;
  communities.reserve(clusters.size());
  for (std::size_t i = 0; i < clusters.size(); ++i) {
    communities.push_back(CommunityProfile{"c" + std::to_string(i + 1),
                                           clusters[i].members, centroid_of(clusters[i])});
  }
  return communities;
}

}  // namespace medselect
