#pragma once

#include <string>
#include <string_view>

#include "repoprint/seqembed/vrae.hpp"

namespace repoprint::seqembed {

inline constexpr std::uint32_t kCheckpointVersion = 1;

std::string serialize_model(const VraeModel& m);
/// Throws Error(VersionMismatch) or Error(CorruptCheckpoint).
VraeModel deserialize_model(std::string_view bytes);

/// Throws Error(IoError) in addition to the above.
void save_model(const VraeModel& m, const std::string& path);
VraeModel load_model(const std::string& path);

}  // namespace repoprint::seqembed
