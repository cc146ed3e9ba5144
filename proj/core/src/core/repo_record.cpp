#include "repoprint/core/repo_record.hpp"

#include <algorithm>

namespace repoprint {

RepoRecord RepoRecord::from_events(std::string repo_id,
                                   std::vector<Event> events) {
  std::stable_sort(events.begin(), events.end(),
                   [](const Event& a, const Event& b) {
                     return a.timestamp < b.timestamp;
                   });
  RepoRecord r;
  r.repo_id = std::move(repo_id);
  for (const Event& e : events) {
    if (e.type == EventType::Watch) {
      r.watchers.insert(e.actor);
    } else {
      r.contributors.insert(e.actor);
    }
    if (!e.text.empty()) {
      if (e.type == EventType::Push || e.type == EventType::CommitComment) {
        r.commit_comments.push_back(e.text);
      } else if (e.type == EventType::Create && r.description.empty()) {
        r.description = e.text;
      }
    }
  }
  r.events = std::move(events);
  return r;
}

std::size_t RepoRecord::activity_count() const noexcept {
  return static_cast<std::size_t>(
      std::count_if(events.begin(), events.end(), [](const Event& e) {
        return e.type != EventType::Watch;
      }));
}

}  // namespace repoprint
