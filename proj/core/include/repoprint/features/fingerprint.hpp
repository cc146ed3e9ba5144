#pragma once

#include <array>

#include "repoprint/core/repo_record.hpp"

namespace repoprint::features {

inline constexpr std::size_t kFingerprintSize = kEventTypeCount - 1;

/// The thirteen non-Watch types in index order; slot i of a fingerprint
/// refers to fingerprint_types()[i].
const std::array<EventType, kFingerprintSize>& fingerprint_types();

/// Share of each non-Watch event type among a repo's non-Watch events.
struct ActivityFingerprint {
  std::array<double, kFingerprintSize> freqs{};

  double share(EventType t) const;
};

/// Throws Error(OnlyWatchEvents) when the repo has no non-Watch event.
ActivityFingerprint activity_fingerprint(const RepoRecord& record);

}  // namespace repoprint::features
