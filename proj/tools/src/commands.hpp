#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace repoprint::cli {

struct Common {
  unsigned threads = 0;
  std::uint64_t seed = 1;
};

struct IngestOptions {
  std::vector<std::string> archives;
  std::string out;
  std::size_t min_events = 50;
  bool require_create = true;
  std::string window = "2017-01-01..2020-06-30";
  std::string geocoder;
  std::string cache;
  std::string users;
};

struct FeaturesOptions {
  std::string repos;
  std::string meta;
  std::size_t lda_k = 2;
  std::size_t lda_iters = 500;
  double lda_alpha = 0.0;
  std::string embedder = "none";
  std::size_t latent = 8;
  std::string translate_cmd;
  std::string out;
};

struct EmbedTrainOptions {
  std::string repos;
  std::size_t latent = 8;
  std::size_t hidden = 32;
  std::size_t max_len = 500;
  std::size_t epochs = 50;
  std::size_t batch_size = 8;
  double learning_rate = 1e-3;
  bool include_watch = false;
  std::size_t max_repos = 0;
  std::string out;
  std::string log;
};

struct EvalOptions {
  std::string features;
  std::string labels;
  std::string cuts = "auto";
  std::size_t seeds = 5;
  std::string positive = "US";
  std::string negative = "CN";
  bool shuffle_labels = false;
  std::string out_dir;
};

struct AblateOptions {
  EvalOptions eval;
  std::string mode = "loo";
  std::vector<std::string> units;
};

struct CaseStudyOptions {
  std::string features;
  std::size_t k = 5;
  std::string out_dir;
};

struct SynthOptions {
  std::string profiles = "reference";
  std::size_t n = 500;
  std::string out_dir;
};

struct StatsOptions {
  std::string repos;
  std::string compare = "country";
  std::string a = "US";
  std::string b = "CN";
  std::string translate_cmd;
  std::string out;
};

void run_ingest(const IngestOptions& o, const Common& c);
void run_features(const FeaturesOptions& o, const Common& c);
void run_embed_train(const EmbedTrainOptions& o, const Common& c);
void run_evaluate(const EvalOptions& o, const Common& c);
void run_ablate(const AblateOptions& o, const Common& c);
void run_case_study(const CaseStudyOptions& o, const Common& c);
void run_synth(const SynthOptions& o, const Common& c);
void run_stats(const StatsOptions& o, const Common& c);

}  // namespace repoprint::cli
