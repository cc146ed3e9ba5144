#include "repoprint/features/feature_vector.hpp"

#include <charconv>
#include <map>
#include <mutex>
#include <set>

#include "repoprint/core/binary_io.hpp"
#include "repoprint/core/csv.hpp"
#include "repoprint/core/error.hpp"
#include "repoprint/core/parallel.hpp"
#include "repoprint/features/fingerprint.hpp"
#include "repoprint/features/profile.hpp"

namespace repoprint::features {
namespace {

double parse_value(const std::string& s) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    fail(Errc::ParseError, "bad feature value '" + s + "'");
  }
  return v;
}

LdaModel uniform_lda(std::size_t k) {
  LdaModel m;
  m.k = k;
  m.alpha = 50.0 / static_cast<double>(k);
  m.beta = 0.01;
  m.topic_word.assign(k, {});
  return m;
}

}  // namespace

std::string_view block_name(FeatureBlock b) {
  switch (b) {
    case FeatureBlock::Profile: return "profile";
    case FeatureBlock::Activity: return "activity";
    case FeatureBlock::Sequence: return "sequence";
  }
  return "?";
}

FeatureSchema FeatureSchema::standard(std::size_t latent_dim) {
  std::vector<std::string> names = {"stars",    "forks",   "open_issues",
                                    "comment_len", "iat_days", "leaders",
                                    "jaccard",  "topic_1", "topic_2"};
  for (EventType t : fingerprint_types()) {
    names.push_back("fp_" + std::string(to_name(t)));
  }
  for (std::size_t i = 0; i < latent_dim; ++i) {
    names.push_back("seq_" + std::to_string(i));
  }
  return from_names(std::move(names));
}

FeatureSchema FeatureSchema::from_names(std::vector<std::string> names) {
  std::set<std::string_view> seen;
  for (const auto& n : names) {
    if (n.empty()) fail(Errc::ParseError, "empty feature name");
    if (!seen.insert(n).second) {
      fail(Errc::ParseError, "duplicate feature name '" + n + "'");
    }
  }
  FeatureSchema s;
  s.names_ = std::move(names);
  return s;
}

FeatureBlock FeatureSchema::block_of(std::size_t column) const {
  const auto& n = names_.at(column);
  if (n.starts_with("fp_")) return FeatureBlock::Activity;
  if (n.starts_with("seq_")) return FeatureBlock::Sequence;
  return FeatureBlock::Profile;
}

std::vector<std::size_t> FeatureSchema::block_columns(FeatureBlock block) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (block_of(i) == block) out.push_back(i);
  }
  return out;
}

std::optional<std::size_t> FeatureSchema::find(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (names_[i] == name) return i;
  }
  return std::nullopt;
}

FeatureVector assemble_feature_vector(const RepoRecord& record,
                                      const LdaModel& lda,
                                      const SequenceEmbedder* embedder,
                                      std::size_t latent_dim,
                                      const TextTranslator& translator) {
  static std::map<std::size_t, std::shared_ptr<const FeatureSchema>> cache;
  static std::mutex cache_mu;
  std::shared_ptr<const FeatureSchema> schema;
  {
    std::lock_guard lock(cache_mu);
    auto& slot = cache[latent_dim];
    if (!slot) slot = std::make_shared<FeatureSchema>(FeatureSchema::standard(latent_dim));
    schema = slot;
  }

  const ProfileFeatures p = profile_features(record, translator);
  std::vector<double> topic(kTopicCount, 1.0 / kTopicCount);
  if (lda.k == kTopicCount && !lda.vocab.empty()) {
    topic = infer_topics(lda, tokenize(record.description));
  }
  const ActivityFingerprint fp = activity_fingerprint(record);

  FeatureVector v;
  v.schema = schema;
  v.values.reserve(schema->size());
  v.values.insert(v.values.end(), {p.stars, p.forks, p.open_issues,
                                   p.comment_len, p.iat_days, p.leaders,
                                   p.jaccard, topic[0], topic[1]});
  v.values.insert(v.values.end(), fp.freqs.begin(), fp.freqs.end());
  if (embedder) {
    if (embedder->dim != latent_dim) {
      fail(Errc::ShapeMismatch, "embedder width " +
                                        std::to_string(embedder->dim) +
                                        " != latent_dim " +
                                        std::to_string(latent_dim));
    }
    auto emb = embedder->embed(record.events);
    if (emb.size() != latent_dim) {
      fail(Errc::ShapeMismatch, "embedding has the wrong width");
    }
    v.values.insert(v.values.end(), emb.begin(), emb.end());
  } else {
    v.values.resize(v.values.size() + latent_dim, 0.0);
  }
  return v;
}

std::string FeatureTable::to_csv() const {
  csv::Row header = {"repo_id", "country", "activity_count"};
  header.insert(header.end(), schema.names().begin(), schema.names().end());
  std::string out = csv::format_row(header);
  for (const auto& r : rows) {
    csv::Row row = {r.repo_id, r.country, std::to_string(r.activity_count)};
    for (double v : r.values) row.push_back(csv::format_double(v));
    out += csv::format_row(row);
  }
  return out;
}

FeatureTable FeatureTable::from_csv(std::string_view text) {
  const auto table = csv::Table::parse(text);
  const auto id = table.column("repo_id");
  const auto country = table.column("country");
  const auto activity = table.column("activity_count");
  std::vector<std::size_t> cols;
  std::vector<std::string> names;
  for (std::size_t i = 0; i < table.header().size(); ++i) {
    if (i == id || i == country || i == activity) continue;
    cols.push_back(i);
    names.push_back(table.header()[i]);
  }
  FeatureTable out;
  out.schema = FeatureSchema::from_names(std::move(names));
  for (const auto& row : table.rows()) {
    FeatureRow r;
    r.repo_id = row[id];
    r.country = row[country];
    r.activity_count = static_cast<std::size_t>(parse_value(row[activity]));
    for (auto c : cols) r.values.push_back(parse_value(row[c]));
    out.rows.push_back(std::move(r));
  }
  return out;
}

FeatureTable FeatureTable::load(const std::string& path) {
  return from_csv(read_file(path));
}

void FeatureTable::save(const std::string& path) const {
  write_file(path, to_csv());
}

Extraction extract_features(std::span<const RepoRecord> records,
                            const ExtractionConfig& cfg) {
  if (cfg.lda.k != kTopicCount) {
    fail(Errc::InvalidConfig, "the feature schema carries exactly " +
                                  std::to_string(kTopicCount) + " topics");
  }
  std::vector<std::vector<std::string>> docs;
  docs.reserve(records.size());
  std::size_t tokens = 0;
  for (const auto& r : records) {
    docs.push_back(tokenize(r.description));
    tokens += docs.back().size();
  }
  Extraction out;
  out.lda = tokens > 0 ? fit_lda(docs, cfg.lda) : uniform_lda(cfg.lda.k);
  out.table.schema = FeatureSchema::standard(cfg.latent_dim);
  out.table.rows.resize(records.size());
  parallel_for(records.size(), cfg.threads, [&](std::size_t i) {
    const RepoRecord& r = records[i];
    auto v = assemble_feature_vector(r, out.lda, cfg.embedder, cfg.latent_dim,
                                     cfg.translator);
    FeatureRow& row = out.table.rows[i];
    row.repo_id = r.repo_id;
    row.country = r.country ? r.country->code() : std::string();
    row.activity_count = r.activity_count();
    row.values = std::move(v.values);
  });
  return out;
}

}  // namespace repoprint::features
