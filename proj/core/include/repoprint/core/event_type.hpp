#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <string_view>

namespace repoprint {

/// The fourteen GitHub event types tracked by the pipeline. The underlying
/// value is the stable channel index used by fingerprints and one-hot inputs;
/// never reorder.
enum class EventType : std::uint8_t {
  Create = 0,
  CommitComment = 1,
  Push = 2,
  Watch = 3,
  Fork = 4,
  IssueComment = 5,
  Issues = 6,
  PullRequest = 7,
  ReviewComment = 8,
  Delete = 9,
  Gollum = 10,
  Member = 11,
  Release = 12,
  Public = 13,
};

inline constexpr std::size_t kEventTypeCount = 14;

inline constexpr std::array<EventType, kEventTypeCount> kAllEventTypes = {
    EventType::Create,        EventType::CommitComment, EventType::Push,
    EventType::Watch,         EventType::Fork,          EventType::IssueComment,
    EventType::Issues,        EventType::PullRequest,   EventType::ReviewComment,
    EventType::Delete,        EventType::Gollum,        EventType::Member,
    EventType::Release,       EventType::Public,
};

constexpr std::size_t index_of(EventType t) noexcept {
  return static_cast<std::size_t>(t);
}

/// Inverse of index_of; `index` must be < kEventTypeCount.
constexpr EventType event_type_at(std::size_t index) noexcept {
  return static_cast<EventType>(index);
}

/// Bare name, e.g. "Push".
std::string_view to_name(EventType t) noexcept;

/// GH Archive name, e.g. "PushEvent". ReviewComment maps to
/// "PullRequestReviewCommentEvent".
std::string_view to_archive_name(EventType t) noexcept;

/// Accepts bare names ("Push"), archive names ("PushEvent") and the
/// archive's long review-comment name. Throws Error(UnknownEventType).
EventType parse_event_type(std::string_view name);

}  // namespace repoprint
