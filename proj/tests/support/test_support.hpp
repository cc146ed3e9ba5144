#pragma once

#include <cstdlib>
#include <filesystem>
#include <initializer_list>
#include <string>
#include <vector>

#include "repoprint/core/event.hpp"
#include "repoprint/core/repo_record.hpp"
#include "repoprint/core/time.hpp"

namespace repoprint::testing {

/// Scratch directory removed on destruction.
class TempDir {
 public:
  TempDir() {
    std::string tmpl = (std::filesystem::temp_directory_path() / "repoprint-XXXXXX").string();
    if (!::mkdtemp(tmpl.data())) throw std::runtime_error("mkdtemp failed");
    path_ = tmpl;
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const noexcept { return path_; }
  std::string file(const std::string& name) const { return (path_ / name).string(); }

 private:
  std::filesystem::path path_;
};

inline UnixSeconds at(const char* ts) { return *parse_utc(ts); }

inline Event make_event(std::string actor, EventType type, std::string repo,
                        UnixSeconds t, std::string text = {}) {
  return Event{std::move(actor), type, std::move(repo), t, std::move(text)};
}

/// One event per type, an hour apart, alternating between two actors.
inline RepoRecord repo_from_types(const std::string& id,
                                  std::initializer_list<EventType> types,
                                  UnixSeconds start = at("2018-01-01T00:00:00Z")) {
  std::vector<Event> events;
  UnixSeconds t = start;
  std::size_t i = 0;
  for (auto type : types) {
    events.push_back(make_event(i % 2 ? "bob" : "alice", type, id, t));
    t += 3600;
    ++i;
  }
  return RepoRecord::from_events(id, std::move(events));
}

}  // namespace repoprint::testing
