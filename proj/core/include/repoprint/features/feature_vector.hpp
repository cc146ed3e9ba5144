#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "repoprint/core/repo_record.hpp"
#include "repoprint/features/lda.hpp"
#include "repoprint/features/text.hpp"

namespace repoprint::features {

/// Feature groups used by the group ablation. Topic entries belong to
/// Profile.
enum class FeatureBlock { Profile, Activity, Sequence };

std::string_view block_name(FeatureBlock b);

/// Ordered, uniquely named feature columns:
///
///   stars forks open_issues comment_len iat_days leaders jaccard
///   topic_1 topic_2 fp_<Type> x13 seq_0 .. seq_{latent-1}
///
/// Column blocks are recovered from the name prefix ("fp_" activity,
/// "seq_" sequence, anything else profile).
class FeatureSchema {
 public:
  static FeatureSchema standard(std::size_t latent_dim);
  /// Throws Error(ParseError) on duplicate or empty names.
  static FeatureSchema from_names(std::vector<std::string> names);

  const std::vector<std::string>& names() const noexcept { return names_; }
  std::size_t size() const noexcept { return names_.size(); }
  FeatureBlock block_of(std::size_t column) const;
  std::vector<std::size_t> block_columns(FeatureBlock block) const;
  std::optional<std::size_t> find(std::string_view name) const;

  friend bool operator==(const FeatureSchema&, const FeatureSchema&) = default;

 private:
  std::vector<std::string> names_;
};

inline constexpr std::size_t kProfileScalarCount = 7;
inline constexpr std::size_t kTopicCount = 2;

/// Maps a repo's ordered events to a fixed-width embedding.
struct SequenceEmbedder {
  std::size_t dim = 0;
  std::function<std::vector<double>(std::span<const Event>)> embed;
};

struct FeatureVector {
  std::shared_ptr<const FeatureSchema> schema;
  std::vector<double> values;
};

/// Profile scalars, LDA topic affinity, fingerprint and sequence embedding
/// in schema order. The sequence block is zero-filled when `embedder` is
/// null; otherwise its width must equal `latent_dim`
/// (Error(ShapeMismatch)).
FeatureVector assemble_feature_vector(const RepoRecord& record,
                                      const LdaModel& lda,
                                      const SequenceEmbedder* embedder,
                                      std::size_t latent_dim,
                                      const TextTranslator& translator);

/// Feature matrix with the per-repo columns the later stages need.
struct FeatureRow {
  std::string repo_id;
  std::string country;  // "" when unassigned
  std::size_t activity_count = 0;
  std::vector<double> values;
};

struct FeatureTable {
  FeatureSchema schema;
  std::vector<FeatureRow> rows;

  /// CSV: `repo_id,country,activity_count,<feature names...>`.
  std::string to_csv() const;
  static FeatureTable from_csv(std::string_view text);
  static FeatureTable load(const std::string& path);
  void save(const std::string& path) const;
};

struct ExtractionConfig {
  LdaConfig lda;
  std::size_t latent_dim = 8;
  const SequenceEmbedder* embedder = nullptr;
  TextTranslator translator = identity_translator();
  unsigned threads = 0;
};

struct Extraction {
  FeatureTable table;
  LdaModel lda;
};

/// Fits LDA on the corpus descriptions and assembles every record's vector.
/// When no description has a token, the topic block is uniform.
Extraction extract_features(std::span<const RepoRecord> records,
                            const ExtractionConfig& cfg);

}  // namespace repoprint::features
