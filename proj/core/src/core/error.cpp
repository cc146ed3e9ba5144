#include "repoprint/core/error.hpp"

namespace repoprint {

std::string_view errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::UnknownEventType: return "UnknownEventType";
    case Errc::InvalidCountryCode: return "InvalidCountryCode";
    case Errc::InvalidTimestamp: return "InvalidTimestamp";
    case Errc::InvalidConfig: return "InvalidConfig";
    case Errc::IoError: return "IoError";
    case Errc::ParseError: return "ParseError";
    case Errc::EmptyContributorSet: return "EmptyContributorSet";
    case Errc::GeocoderError: return "GeocoderError";
    case Errc::EmptyEventPool: return "EmptyEventPool";
    case Errc::SupportMismatch: return "SupportMismatch";
    case Errc::InsufficientSamples: return "InsufficientSamples";
    case Errc::ZeroVariance: return "ZeroVariance";
    case Errc::TooFewEvents: return "TooFewEvents";
    case Errc::BothSetsEmpty: return "BothSetsEmpty";
    case Errc::OnlyWatchEvents: return "OnlyWatchEvents";
    case Errc::EmptyCorpus: return "EmptyCorpus";
    case Errc::ShapeMismatch: return "ShapeMismatch";
    case Errc::EmptySequence: return "EmptySequence";
    case Errc::SequenceTooLong: return "SequenceTooLong";
    case Errc::EmptyTrainingSet: return "EmptyTrainingSet";
    case Errc::VersionMismatch: return "VersionMismatch";
    case Errc::CorruptCheckpoint: return "CorruptCheckpoint";
    case Errc::SingleClassTraining: return "SingleClassTraining";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::KTooLarge: return "KTooLarge";
    case Errc::LengthMismatch: return "LengthMismatch";
    case Errc::TooFewRepos: return "TooFewRepos";
    case Errc::ClusterTooSmall: return "ClusterTooSmall";
    case Errc::UnknownFeatureName: return "UnknownFeatureName";
    case Errc::InsufficientCorpus: return "InsufficientCorpus";
    case Errc::InvalidProfile: return "InvalidProfile";
  }
  return "Unknown";
}

void fail(Errc code, const std::string& what) { throw Error(code, what); }

}  // namespace repoprint
