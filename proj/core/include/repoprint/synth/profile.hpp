#pragma once

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "repoprint/core/country.hpp"
#include "repoprint/core/event_type.hpp"

namespace repoprint::synth {

using TypeVector = std::array<double, kEventTypeCount>;
using TransitionMatrix = std::array<TypeVector, kEventTypeCount>;

struct Lognormal {
  double mu = 0.0;
  double sigma = 1.0;
};

struct Normal {
  double mean = 0.0;
  double stddev = 1.0;
};

/// Generative parameters of one group of repositories.
struct GroupProfile {
  std::string name;
  CountryLabel label{"US"};
  TypeVector type_dist{};
  TransitionMatrix transition{};
  Lognormal iat_days;          // gap between consecutive events, in days
  Lognormal stars;
  Lognormal forks;
  double open_issues_mean = 2.0;
  Normal comment_len;          // characters per commit message
  double leaders_mean = 2.0;   // extra leaders beyond the first, Poisson
  double others_mean = 3.0;    // non-leader participants, Poisson
  Lognormal repo_size{3.7, 0.7};  // events beyond the minimum of 50
  std::vector<std::pair<std::string, double>> description_vocab;
  std::vector<std::string> locations;

  /// Throws Error(InvalidProfile).
  void validate() const;
};

/// (1 - stickiness) * 1·πᵀ + stickiness * I. Its stationary distribution is π.
TransitionMatrix sticky_transition(const TypeVector& pi, double stickiness);

/// Left fixed point of a row-stochastic matrix by power iteration.
TypeVector stationary_distribution(const TransitionMatrix& t);

/// US-like and CN-like fixture profiles used by the acceptance suite.
std::pair<GroupProfile, GroupProfile> reference_profiles();

/// Component-wise interpolation a + lambda (b - a) of every numeric field;
/// labels, names, vocabulary and locations stay those of `a`.
GroupProfile interpolate(const GroupProfile& a, const GroupProfile& b,
                         double lambda);

std::string profile_to_json(const GroupProfile& p);
/// Throws Error(InvalidProfile) or Error(ParseError).
GroupProfile profile_from_json(const std::string& text);
/// A JSON array of profiles, or a single profile object.
std::vector<GroupProfile> profiles_from_json(const std::string& text);
std::string profiles_to_json(const std::vector<GroupProfile>& profiles);

}  // namespace repoprint::synth
