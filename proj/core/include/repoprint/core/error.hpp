#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace repoprint {

/// Failure categories raised across the library. The CLI reports these by
/// name in its machine-readable error output.
enum class Errc {
  UnknownEventType,
  InvalidCountryCode,
  InvalidTimestamp,
  InvalidConfig,
  IoError,
  ParseError,
  EmptyContributorSet,
  GeocoderError,
  EmptyEventPool,
  SupportMismatch,
  InsufficientSamples,
  ZeroVariance,
  TooFewEvents,
  BothSetsEmpty,
  OnlyWatchEvents,
  EmptyCorpus,
  ShapeMismatch,
  EmptySequence,
  SequenceTooLong,
  EmptyTrainingSet,
  VersionMismatch,
  CorruptCheckpoint,
  SingleClassTraining,
  DimensionMismatch,
  KTooLarge,
  LengthMismatch,
  TooFewRepos,
  ClusterTooSmall,
  UnknownFeatureName,
  InsufficientCorpus,
  InvalidProfile,
};

std::string_view errc_name(Errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] void fail(Errc code, const std::string& what);

}  // namespace repoprint
