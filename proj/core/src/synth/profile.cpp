#include "repoprint/synth/profile.hpp"

#include <cmath>

#include "json.hpp"
#include "repoprint/core/error.hpp"

namespace repoprint::synth {
namespace {

using json = nlohmann::json;

constexpr double kSumTolerance = 1e-9;

void check_distribution(const TypeVector& v, const std::string& what) {
  double sum = 0.0;
  for (double x : v) {
    if (!(x >= 0.0) || !std::isfinite(x)) {
      fail(Errc::InvalidProfile, what + " has a negative or non-finite entry");
    }
    sum += x;
  }
  if (std::abs(sum - 1.0) > kSumTolerance) {
    fail(Errc::InvalidProfile, what + " sums to " + std::to_string(sum));
  }
}

void check_positive(double v, const std::string& what) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    fail(Errc::InvalidProfile, what + " must be positive");
  }
}

double lerp(double a, double b, double t) { return a + t * (b - a); }

Lognormal lerp(const Lognormal& a, const Lognormal& b, double t) {
  return {lerp(a.mu, b.mu, t), lerp(a.sigma, b.sigma, t)};
}

TypeVector type_vector(std::initializer_list<std::pair<EventType, double>> xs) {
  TypeVector v{};
  for (auto [t, p] : xs) v[index_of(t)] = p;
  return v;
}

json lognormal_json(const Lognormal& l) { return {{"mu", l.mu}, {"sigma", l.sigma}}; }

Lognormal lognormal_from(const json& j) {
  return {j.at("mu").get<double>(), j.at("sigma").get<double>()};
}

json profile_json(const GroupProfile& p) {
  json j;
  j["name"] = p.name;
  j["label"] = p.label.code();
  json dist = json::object();
  for (EventType t : kAllEventTypes) dist[std::string(to_name(t))] = p.type_dist[index_of(t)];
  j["type_dist"] = dist;
  json rows = json::array();
  for (const auto& r : p.transition) rows.push_back(std::vector<double>(r.begin(), r.end()));
  j["transition"] = rows;
  j["iat_days"] = lognormal_json(p.iat_days);
  j["stars"] = lognormal_json(p.stars);
  j["forks"] = lognormal_json(p.forks);
  j["open_issues_mean"] = p.open_issues_mean;
  j["comment_len"] = {{"mean", p.comment_len.mean}, {"stddev", p.comment_len.stddev}};
  j["leaders_mean"] = p.leaders_mean;
  j["others_mean"] = p.others_mean;
  j["repo_size"] = lognormal_json(p.repo_size);
  json vocab = json::array();
  for (const auto& [w, weight] : p.description_vocab) vocab.push_back({w, weight});
  j["description_vocab"] = vocab;
  j["locations"] = p.locations;
  return j;
}

GroupProfile profile_from(const json& j) {
  GroupProfile p;
  p.name = j.at("name").get<std::string>();
  auto label = CountryLabel::parse(j.at("label").get<std::string>());
  if (!label) fail(Errc::InvalidProfile, "profile label is not a country code");
  p.label = *label;
  for (const auto& [name, prob] : j.at("type_dist").items()) {
    p.type_dist[index_of(parse_event_type(name))] = prob.get<double>();
  }
  if (j.contains("transition")) {
    const auto& rows = j.at("transition");
    if (!rows.is_array() || rows.size() != kEventTypeCount) {
      fail(Errc::InvalidProfile, "transition must have 14 rows");
    }
    for (std::size_t r = 0; r < kEventTypeCount; ++r) {
      if (!rows[r].is_array() || rows[r].size() != kEventTypeCount) {
        fail(Errc::InvalidProfile, "transition rows must have 14 entries");
      }
      for (std::size_t c = 0; c < kEventTypeCount; ++c) {
        p.transition[r][c] = rows[r][c].get<double>();
      }
    }
  } else {
    p.transition = sticky_transition(p.type_dist, j.value("stickiness", 0.0));
  }
  p.iat_days = lognormal_from(j.at("iat_days"));
  p.stars = lognormal_from(j.at("stars"));
  p.forks = lognormal_from(j.at("forks"));
  p.open_issues_mean = j.value("open_issues_mean", p.open_issues_mean);
  p.comment_len = {j.at("comment_len").at("mean").get<double>(),
                   j.at("comment_len").at("stddev").get<double>()};
  p.leaders_mean = j.value("leaders_mean", p.leaders_mean);
  p.others_mean = j.value("others_mean", p.others_mean);
  if (j.contains("repo_size")) p.repo_size = lognormal_from(j.at("repo_size"));
  for (const auto& e : j.at("description_vocab")) {
    p.description_vocab.emplace_back(e.at(0).get<std::string>(), e.at(1).get<double>());
  }
  p.locations = j.at("locations").get<std::vector<std::string>>();
  p.validate();
  return p;
}

template <typename Fn>
auto with_json_errors(Fn&& fn) {
  try {
    return fn();
  } catch (const json::exception& e) {
    fail(Errc::InvalidProfile, std::string("profile JSON: ") + e.what());
  }
}

}  // namespace

void GroupProfile::validate() const {
  check_distribution(type_dist, "type_dist of '" + name + "'");
  for (std::size_t r = 0; r < kEventTypeCount; ++r) {
    check_distribution(transition[r], "transition row " +
                                          std::string(to_name(event_type_at(r))));
  }
  check_positive(iat_days.sigma, "iat_days.sigma");
  check_positive(stars.sigma, "stars.sigma");
  check_positive(forks.sigma, "forks.sigma");
  check_positive(repo_size.sigma, "repo_size.sigma");
  check_positive(comment_len.mean, "comment_len.mean");
  check_positive(comment_len.stddev, "comment_len.stddev");
  check_positive(leaders_mean, "leaders_mean");
  if (!(open_issues_mean >= 0.0) || !(others_mean >= 0.0)) {
    fail(Errc::InvalidProfile, "Poisson means must be non-negative");
  }
  if (description_vocab.empty()) {
    fail(Errc::InvalidProfile, "description vocabulary is empty");
  }
  for (const auto& [w, weight] : description_vocab) {
    if (w.empty()) fail(Errc::InvalidProfile, "empty vocabulary word");
    check_positive(weight, "vocabulary weight of '" + w + "'");
  }
  if (locations.empty()) fail(Errc::InvalidProfile, "no locations");
  for (const auto& l : locations) {
    if (l.find_first_of("\t\n") != std::string::npos || l.empty()) {
      fail(Errc::InvalidProfile, "locations must be non-empty single-line text");
    }
  }
}

TransitionMatrix sticky_transition(const TypeVector& pi, double stickiness) {
  if (!(stickiness >= 0.0 && stickiness < 1.0)) {
    fail(Errc::InvalidProfile, "stickiness must lie in [0, 1)");
  }
  TransitionMatrix t{};
  for (std::size_t r = 0; r < kEventTypeCount; ++r) {
    for (std::size_t c = 0; c < kEventTypeCount; ++c) {
      t[r][c] = (1.0 - stickiness) * pi[c] + (r == c ? stickiness : 0.0);
    }
  }
  return t;
}

TypeVector stationary_distribution(const TransitionMatrix& t) {
  TypeVector v;
  v.fill(1.0 / kEventTypeCount);
  for (int it = 0; it < 100000; ++it) {
    TypeVector next{};
    for (std::size_t r = 0; r < kEventTypeCount; ++r) {
      for (std::size_t c = 0; c < kEventTypeCount; ++c) next[c] += v[r] * t[r][c];
    }
    double delta = 0.0;
    for (std::size_t c = 0; c < kEventTypeCount; ++c) {
      delta = std::max(delta, std::abs(next[c] - v[c]));
    }
    v = next;
    if (delta < 1e-15) break;
  }
  return v;
}

std::pair<GroupProfile, GroupProfile> reference_profiles() {
  using E = EventType;
  GroupProfile us;
  us.name = "us-like";
  us.label = kUnitedStates;
  us.type_dist = type_vector({{E::Create, 0.03}, {E::CommitComment, 0.01},
                              {E::Push, 0.48}, {E::Watch, 0.08},
                              {E::Fork, 0.04}, {E::IssueComment, 0.12},
                              {E::Issues, 0.06}, {E::PullRequest, 0.09},
                              {E::ReviewComment, 0.04}, {E::Delete, 0.02},
                              {E::Gollum, 0.01}, {E::Member, 0.005},
                              {E::Release, 0.01}, {E::Public, 0.005}});
  us.transition = sticky_transition(us.type_dist, 0.55);
  us.iat_days = {std::log(0.4), 1.0};
  us.stars = {3.0, 1.2};
  us.forks = {1.5, 1.0};
  us.open_issues_mean = 3.0;
  us.comment_len = {55.0, 20.0};
  us.leaders_mean = 2.5;
  us.others_mean = 3.0;
  us.repo_size = {3.7, 0.8};
  us.description_vocab = {{"web", 3},     {"framework", 2}, {"api", 2},
                          {"cloud", 2},   {"server", 1},    {"javascript", 2},
                          {"library", 2}, {"react", 1},     {"service", 1},
                          {"platform", 1}};
  us.locations = {"San Francisco, CA", "Seattle, WA", "New York",
                  "Austin, TX", "Boston, MA"};

  GroupProfile cn;
  cn.name = "cn-like";
  cn.label = kChina;
  cn.type_dist = type_vector({{E::Create, 0.03}, {E::CommitComment, 0.01},
                              {E::Push, 0.30}, {E::Watch, 0.18},
                              {E::Fork, 0.17}, {E::IssueComment, 0.10},
                              {E::Issues, 0.06}, {E::PullRequest, 0.05},
                              {E::ReviewComment, 0.02}, {E::Delete, 0.03},
                              {E::Gollum, 0.01}, {E::Member, 0.02},
                              {E::Release, 0.01}, {E::Public, 0.01}});
  cn.transition = sticky_transition(cn.type_dist, 0.25);
  cn.iat_days = {std::log(1.2), 1.0};
  cn.stars = {3.4, 1.2};
  cn.forks = {2.2, 1.0};
  cn.open_issues_mean = 2.0;
  cn.comment_len = {32.0, 14.0};
  cn.leaders_mean = 1.5;
  cn.others_mean = 4.0;
  cn.repo_size = {3.7, 0.8};
  cn.description_vocab = {{"deep", 2},    {"learning", 2},       {"model", 2},
                          {"python", 2},  {"toolkit", 1},        {"library", 1},
                          {"pytorch", 2}, {"implementation", 1}, {"paper", 1},
                          {"dataset", 1}};
  cn.locations = {"Beijing", "Shanghai, China", "Hangzhou", "Shenzhen",
                  "Beijing, China"};
  return {us, cn};
}

GroupProfile interpolate(const GroupProfile& a, const GroupProfile& b,
                         double lambda) {
  GroupProfile p = a;
  for (std::size_t i = 0; i < kEventTypeCount; ++i) {
    p.type_dist[i] = lerp(a.type_dist[i], b.type_dist[i], lambda);
    for (std::size_t j = 0; j < kEventTypeCount; ++j) {
      p.transition[i][j] = lerp(a.transition[i][j], b.transition[i][j], lambda);
    }
  }
  p.iat_days = lerp(a.iat_days, b.iat_days, lambda);
  p.stars = lerp(a.stars, b.stars, lambda);
  p.forks = lerp(a.forks, b.forks, lambda);
  p.repo_size = lerp(a.repo_size, b.repo_size, lambda);
  p.open_issues_mean = lerp(a.open_issues_mean, b.open_issues_mean, lambda);
  p.comment_len = {lerp(a.comment_len.mean, b.comment_len.mean, lambda),
                   lerp(a.comment_len.stddev, b.comment_len.stddev, lambda)};
  p.leaders_mean = lerp(a.leaders_mean, b.leaders_mean, lambda);
  p.others_mean = lerp(a.others_mean, b.others_mean, lambda);
  return p;
}

std::string profile_to_json(const GroupProfile& p) { return profile_json(p).dump(2); }

GroupProfile profile_from_json(const std::string& text) {
  return with_json_errors([&] { return profile_from(json::parse(text)); });
}

std::vector<GroupProfile> profiles_from_json(const std::string& text) {
  return with_json_errors([&] {
    const json j = json::parse(text);
    std::vector<GroupProfile> out;
    if (j.is_array()) {
      for (const auto& e : j) out.push_back(profile_from(e));
    } else {
      out.push_back(profile_from(j));
    }
    return out;
  });
}

std::string profiles_to_json(const std::vector<GroupProfile>& profiles) {
  json j = json::array();
  for (const auto& p : profiles) j.push_back(profile_json(p));
  return j.dump(2);
}

}  // namespace repoprint::synth
