#include "repoprint/core/event_type.hpp"

#include <string>

#include "repoprint/core/error.hpp"

namespace repoprint {
namespace {

constexpr std::array<std::string_view, kEventTypeCount> kNames = {
    "Create",        "CommitComment", "Push",   "Watch",       "Fork",
    "IssueComment",  "Issues",        "PullRequest", "ReviewComment",
    "Delete",        "Gollum",        "Member", "Release",     "Public",
};

constexpr std::array<std::string_view, kEventTypeCount> kArchiveNames = {
    "CreateEvent",       "CommitCommentEvent",
    "PushEvent",         "WatchEvent",
    "ForkEvent",         "IssueCommentEvent",
    "IssuesEvent",       "PullRequestEvent",
    "PullRequestReviewCommentEvent",
    "DeleteEvent",       "GollumEvent",
    "MemberEvent",       "ReleaseEvent",
    "PublicEvent",
};

}  // namespace

std::string_view to_name(EventType t) noexcept { return kNames[index_of(t)]; }

std::string_view to_archive_name(EventType t) noexcept {
  return kArchiveNames[index_of(t)];
}

EventType parse_event_type(std::string_view name) {
  for (std::size_t i = 0; i < kEventTypeCount; ++i) {
    if (name == kNames[i] || name == kArchiveNames[i]) return event_type_at(i);
  }
  if (name == "ReviewCommentEvent") return EventType::ReviewComment;
  fail(Errc::UnknownEventType,
       "unknown event type '" + std::string(name) + "'");
}

}  // namespace repoprint
