#pragma once

#include <string>

#include "repoprint/core/event_type.hpp"
#include "repoprint/core/time.hpp"

namespace repoprint {

/// One (actor, type, repo, timestamp) observation.
///
/// `text` carries the only payload the features need: the commit message of
/// a Push, the body of a CommitComment, or the repo description on a Create.
/// It is empty for every other event.
struct Event {
  std::string actor;
  EventType type = EventType::Push;
  std::string repo;
  UnixSeconds timestamp = 0;
  std::string text;

  friend bool operator==(const Event&, const Event&) = default;
};

}  // namespace repoprint
