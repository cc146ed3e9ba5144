#include "repoprint/synth/generator.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <filesystem>
#include <map>

#include "repoprint/core/binary_io.hpp"
#include "repoprint/core/csv.hpp"
#include "repoprint/core/parallel.hpp"
#include "repoprint/core/random.hpp"
#include "repoprint/ingest/archive.hpp"

namespace repoprint::synth {
namespace {

constexpr std::size_t kMaxExtraEvents = 4000;

const std::vector<std::string>& commit_words() {
  static const std::vector<std::string> words = {
      "fix",   "update", "add",    "refactor", "test",    "docs",
      "bug",   "feature", "merge", "cleanup",  "build",   "release",
      "config", "module", "support", "parser", "handler", "typo"};
  return words;
}

std::size_t sample_categorical(Rng& rng, std::span<const double> weights) {
  double total = 0.0;
  for (double w : weights) total += w;
  double u = uniform01(rng) * total;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (u < weights[i]) return i;
    u -= weights[i];
  }
  // rounding fallthrough: last category with positive weight
  for (std::size_t i = weights.size(); i-- > 0;) {
    if (weights[i] > 0.0) return i;
  }
  return 0;
}

double lognormal(Rng& rng, const Lognormal& p) {
  return std::exp(p.mu + p.sigma * standard_normal(rng));
}

std::uint64_t poisson(Rng& rng, double mean) {
  if (mean <= 0.0) return 0;
  return std::poisson_distribution<std::uint64_t>(mean)(rng);
}

std::string commit_message(Rng& rng, const Normal& len) {
  const double draw = len.mean + len.stddev * standard_normal(rng);
  const auto target = static_cast<std::size_t>(std::max(3.0, std::round(draw)));
  const auto& words = commit_words();
  std::string out;
  while (out.size() < target) {
    if (!out.empty()) out += ' ';
    out += words[uniform_index(rng, words.size())];
  }
  out.resize(target);
  while (!out.empty() && out.back() == ' ') out.pop_back();
  return out;
}

std::string description(Rng& rng, const GroupProfile& p) {
  std::vector<double> w;
  for (const auto& [word, weight] : p.description_vocab) w.push_back(weight);
  const std::size_t n = 5 + uniform_index(rng, 6);
  std::string out;
  for (std::size_t i = 0; i < n; ++i) {
    if (!out.empty()) out += ' ';
    out += p.description_vocab[sample_categorical(rng, w)].first;
  }
  return out;
}

std::string lower(std::string s) {
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

struct RepoDraft {
  SyntheticRepo repo;
  std::vector<ingest::UserProfile> users;
};

RepoDraft generate_repo(const GroupProfile& p, std::size_t group,
                        std::size_t index, const GeneratorConfig& cfg) {
  Rng rng(mix_seed(mix_seed(cfg.seed, group), index));
  RepoDraft d;
  SyntheticRepo& r = d.repo;
  const std::string tag = lower(p.label.code()) + std::to_string(group);
  char id[64];
  std::snprintf(id, sizeof id, "synth-%s/repo-%05zu", tag.c_str(), index);
  r.repo_id = id;
  r.country = p.label.code();

  const auto extra = std::min<double>(std::floor(lognormal(rng, p.repo_size)),
                                      static_cast<double>(kMaxExtraEvents));
  const std::size_t n = kMinRepoEvents + static_cast<std::size_t>(extra);

  // actors: leaders push and open pull requests, participants do the rest
  const std::size_t n_leaders = 1 + poisson(rng, p.leaders_mean);
  const std::size_t n_others = poisson(rng, p.others_mean);
  const std::string prefix = "synth-" + tag + "-" + std::to_string(index);
  std::vector<std::string> leaders, participants;
  for (std::size_t i = 0; i < n_leaders; ++i) {
    leaders.push_back(prefix + "-l" + std::to_string(i));
  }
  participants = leaders;
  for (std::size_t i = 0; i < n_others; ++i) {
    participants.push_back(prefix + "-p" + std::to_string(i));
  }
  for (const auto& a : participants) {
    d.users.push_back({a, p.locations[uniform_index(rng, p.locations.size())], ""});
  }

  // types: Create, then a stationary start and the Markov walk
  std::vector<EventType> types(n);
  types[0] = EventType::Create;
  std::size_t state = sample_categorical(rng, p.type_dist);
  types[1] = event_type_at(state);
  for (std::size_t i = 2; i < n; ++i) {
    state = sample_categorical(rng, p.transition[state]);
    types[i] = event_type_at(state);
  }

  // timestamps: i.i.d. lognormal gaps, compressed if they overrun the window
  std::vector<double> gaps(n - 1);
  double span = 0.0;
  for (auto& g : gaps) {
    g = lognormal(rng, p.iat_days) * static_cast<double>(kSecondsPerDay);
    span += g;
  }
  const double room = static_cast<double>(cfg.window.end - cfg.window.start - 1);
  if (span > room) {
    for (auto& g : gaps) g *= room / span;
    span = room;
  }
  double t = static_cast<double>(cfg.window.start) + uniform01(rng) * (room - span);

  std::size_t watchers = 0;
  r.events.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (i > 0) t += gaps[i - 1];
    Event e;
    e.type = types[i];
    e.repo = r.repo_id;
    e.timestamp = std::min(static_cast<UnixSeconds>(t), cfg.window.end - 1);
    if (!r.events.empty()) e.timestamp = std::max(e.timestamp, r.events.back().timestamp);
    switch (e.type) {
      case EventType::Create:
        e.actor = leaders.front();
        break;
      case EventType::Push:
      case EventType::PullRequest:
        e.actor = leaders[uniform_index(rng, leaders.size())];
        break;
      case EventType::Watch:
        e.actor = prefix + "-w" + std::to_string(watchers++);
        break;
      default:
        e.actor = participants[uniform_index(rng, participants.size())];
    }
    if (e.type == EventType::Push || e.type == EventType::CommitComment) {
      e.text = commit_message(rng, p.comment_len);
    }
    if (i == 0) e.text = description(rng, p);
    r.events.push_back(std::move(e));
  }

  r.metadata.stars = static_cast<std::uint64_t>(std::floor(lognormal(rng, p.stars)));
  r.metadata.forks = static_cast<std::uint64_t>(std::floor(lognormal(rng, p.forks)));
  r.metadata.open_issues = poisson(rng, p.open_issues_mean);
  r.metadata.description = r.events.front().text;
  return d;
}

}  // namespace

SyntheticCorpus generate_corpus(std::span<const GroupProfile> profiles,
                                const GeneratorConfig& cfg) {
  if (profiles.empty()) fail(Errc::InvalidProfile, "no group profiles");
  if (cfg.n_per_group == 0) fail(Errc::InvalidConfig, "n_per_group must be >= 1");
  if (cfg.window.end - cfg.window.start < kSecondsPerDay) {
    fail(Errc::InvalidConfig, "generation window is shorter than a day");
  }
  for (const auto& p : profiles) p.validate();

  const std::size_t total = profiles.size() * cfg.n_per_group;
  std::vector<RepoDraft> drafts(total);
  parallel_for(total, cfg.threads, [&](std::size_t k) {
    const std::size_t g = k / cfg.n_per_group;
    drafts[k] = generate_repo(profiles[g], g, k % cfg.n_per_group, cfg);
  });

  SyntheticCorpus out;
  std::map<std::string, std::string> gazetteer;
  for (std::size_t g = 0; g < profiles.size(); ++g) {
    for (const auto& loc : profiles[g].locations) {
      gazetteer.emplace(ingest::normalize_location(loc), profiles[g].label.code());
    }
  }
  out.gazetteer.assign(gazetteer.begin(), gazetteer.end());
  for (auto& d : drafts) {
    out.repos.push_back(std::move(d.repo));
    out.users.insert(out.users.end(), d.users.begin(), d.users.end());
  }
  return out;
}

std::string SyntheticCorpus::events_ndjson() const {
  std::string out;
  for (const auto& r : repos) {
    for (const auto& e : r.events) {
      out += ingest::format_event_line(e);
      out += '\n';
    }
  }
  return out;
}

std::string SyntheticCorpus::metadata_csv() const {
  features::MetadataSidecar sidecar;
  for (const auto& r : repos) sidecar[r.repo_id] = r.metadata;
  return features::format_metadata(sidecar);
}

std::string SyntheticCorpus::labels_csv() const {
  std::string out = csv::format_row({"repo_id", "country"});
  for (const auto& r : repos) out += csv::format_row({r.repo_id, r.country});
  return out;
}

std::string SyntheticCorpus::users_csv() const {
  std::string out = csv::format_row({"actor", "location", "company"});
  for (const auto& u : users) out += csv::format_row({u.actor, u.location, u.company});
  return out;
}

std::string SyntheticCorpus::gazetteer_tsv() const {
  std::string out;
  for (const auto& [loc, cc] : gazetteer) out += loc + "\t" + cc + "\n";
  return out;
}

void SyntheticCorpus::write(const std::string& dir) const {
  std::filesystem::create_directories(dir);
  const std::filesystem::path base(dir);
  write_file((base / "events.ndjson").string(), events_ndjson());
  write_file((base / "meta.csv").string(), metadata_csv());
  write_file((base / "labels.csv").string(), labels_csv());
  write_file((base / "users.csv").string(), users_csv());
  write_file((base / "gazetteer.tsv").string(), gazetteer_tsv());
}

}  // namespace repoprint::synth
