#include "repoprint/features/fingerprint.hpp"

#include "repoprint/core/error.hpp"

namespace repoprint::features {
namespace {

constexpr std::size_t slot_of(EventType t) {
  const auto i = index_of(t);
  return i < index_of(EventType::Watch) ? i : i - 1;
}

}  // namespace

const std::array<EventType, kFingerprintSize>& fingerprint_types() {
  static const auto types = [] {
    std::array<EventType, kFingerprintSize> out{};
    std::size_t j = 0;
    for (EventType t : kAllEventTypes) {
      if (t != EventType::Watch) out[j++] = t;
    }
    return out;
  }();
  return types;
}

double ActivityFingerprint::share(EventType t) const {
  return t == EventType::Watch ? 0.0 : freqs[slot_of(t)];
}

ActivityFingerprint activity_fingerprint(const RepoRecord& record) {
  ActivityFingerprint fp;
  std::size_t total = 0;
  for (const Event& e : record.events) {
    if (e.type == EventType::Watch) continue;
    fp.freqs[slot_of(e.type)] += 1.0;
    ++total;
  }
  if (total == 0) {
    fail(Errc::OnlyWatchEvents,
         "repo '" + record.repo_id + "' has only Watch events");
  }
  for (double& f : fp.freqs) f /= static_cast<double>(total);
  return fp;
}

}  // namespace repoprint::features
