#include "commands.hpp"

#include <algorithm>
#include <filesystem>
#include <iostream>

#include "manifest.hpp"
#include "repoprint/core/binary_io.hpp"
#include "repoprint/core/csv.hpp"
#include "repoprint/core/repo_store.hpp"
#include "repoprint/features/feature_vector.hpp"
#include "repoprint/features/metadata.hpp"
#include "repoprint/ingest/archive.hpp"
#include "repoprint/ingest/curation.hpp"
#include "repoprint/ingest/geocoder.hpp"
#include "repoprint/pipeline/ablation.hpp"
#include "repoprint/pipeline/case_study.hpp"
#include "repoprint/pipeline/country_stats.hpp"
#include "repoprint/pipeline/dataset.hpp"
#include "repoprint/pipeline/evaluation.hpp"
#include "repoprint/pipeline/reports.hpp"
#include "repoprint/seqembed/checkpoint.hpp"
#include "repoprint/seqembed/trainer.hpp"
#include "repoprint/synth/generator.hpp"

namespace repoprint::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

std::string in_dir(const std::string& dir, const std::string& name) {
  return (fs::path(dir) / name).string();
}

void ensure_parent(const std::string& path) {
  const auto parent = fs::path(path).parent_path();
  if (!parent.empty()) fs::create_directories(parent);
}

features::TextTranslator translator_for(const std::string& cmd) {
  return cmd.empty() ? features::identity_translator()
                     : features::command_translator(cmd);
}

struct PreparedData {
  pipeline::LabeledDataset data;
  pipeline::ClusterAssignment clusters;
  pipeline::SplitConfig split;
  pipeline::JoinReport join;
};

PreparedData prepare(const EvalOptions& o, const Common& c, RunManifest& m) {
  m.input(o.features);
  m.config("features", o.features);
  m.config("cuts", o.cuts);
  m.config("seeds", o.seeds);
  m.config("positive", o.positive);
  m.config("negative", o.negative);
  m.config("shuffle_labels", o.shuffle_labels);
  m.seed(c.seed);

  PreparedData p;
  const auto table = features::FeatureTable::load(o.features);
  const std::vector<std::string> allowed = {o.positive, o.negative};
  if (!o.labels.empty()) {
    m.input(o.labels);
    m.config("labels", o.labels);
    p.data = pipeline::join_labels(table, pipeline::load_labels(o.labels), allowed, &p.join);
  } else {
    p.data = pipeline::dataset_from_table(table, allowed, &p.join);
  }
  if (o.shuffle_labels) p.data = pipeline::shuffle_labels(std::move(p.data), c.seed);
  std::optional<pipeline::CutPoints> cuts;
  if (o.cuts != "auto") cuts = pipeline::parse_cuts(o.cuts);
  p.clusters = pipeline::quartile_clusters(p.data.activity, cuts);
  m.config("resolved_cuts", pipeline::format_cuts(p.clusters.cuts));
  p.split.seeds = o.seeds;
  p.split.base_seed = c.seed;
  p.split.positive_label = o.positive;
  p.split.threads = c.threads;
  return p;
}

void write_output(RunManifest& m, const std::string& path, const std::string& bytes) {
  ensure_parent(path);
  write_file(path, bytes);
  m.output(path);
}

}  // namespace

void run_ingest(const IngestOptions& o, const Common& c) {
  RunManifest m("ingest");
  std::vector<std::string> paths;
  for (const auto& pattern : o.archives) {
    auto files = ingest::expand_glob(pattern);
    paths.insert(paths.end(), files.begin(), files.end());
  }
  if (paths.empty()) fail(Errc::IoError, "no archive files matched");
  for (const auto& p : paths) m.input(p);
  m.config("archives", o.archives);
  m.config("min_events", o.min_events);
  m.config("require_create", o.require_create);
  m.config("window", o.window);
  m.config("geocoder", o.geocoder);

  const auto parsed = ingest::parse_archive_files(paths, c.threads);
  ingest::CurationConfig cfg;
  cfg.min_events = o.min_events;
  cfg.require_create = o.require_create;
  cfg.window = parse_window(o.window);
  cfg.validate();
  ingest::CurationReport cur;
  auto records = ingest::curate(parsed.events, cfg, &cur);

  json summary;
  summary["lines_read"] = parsed.report.lines_read;
  summary["events_kept"] = parsed.report.events_kept;
  summary["lines_skipped"] = parsed.report.lines_skipped;
  summary["repos_seen"] = cur.repos_seen;
  summary["repos_kept"] = cur.repos_kept;
  summary["dropped_too_few_events"] = cur.dropped_too_few_events;
  summary["dropped_no_create"] = cur.dropped_no_create;
  summary["events_outside_window"] = cur.events_outside_window;

  if (!o.users.empty()) {
    if (o.geocoder.empty()) {
      fail(Errc::InvalidConfig, "--users requires --geocoder");
    }
    m.input(o.users);
    m.config("users", o.users);
    if (o.geocoder.starts_with("file:")) m.input(o.geocoder.substr(5));
    const auto users = ingest::load_user_profiles(o.users);
    auto geocoder = ingest::make_geocoder(o.geocoder);
    auto cache = o.cache.empty() ? ingest::GeocodeCache{} : ingest::GeocodeCache::load(o.cache);
    ingest::LocationResolver resolver(*geocoder, cache);
    const auto rep = pipeline::assign_countries(records, users, resolver, cfg);
    if (!o.cache.empty()) cache.save(o.cache);
    summary["users"] = rep.users;
    summary["users_resolved"] = rep.users_resolved;
    summary["repos_labeled"] = rep.repos_labeled;
    summary["repos_unlabeled"] = rep.repos_unlabeled;
    summary["geocoder_queries"] = rep.resolve.geocoder_queries;
    summary["geocoder_failures"] = rep.resolve.geocoder_failures;
    summary["cache_hits"] = rep.resolve.cache_hits;
  }
  ensure_parent(o.out);
  save_repos(o.out, records);
  m.output(o.out);
  m.write(o.out + ".manifest.json");
  std::cout << summary.dump() << "\n";
}

void run_features(const FeaturesOptions& o, const Common& c) {
  RunManifest m("features");
  m.input(o.repos);
  m.config("lda_k", o.lda_k);
  m.config("lda_iters", o.lda_iters);
  m.config("lda_alpha", o.lda_alpha);
  m.config("embedder", o.embedder);
  m.config("translate_cmd", o.translate_cmd);
  m.seed(c.seed);

  auto records = load_repos(o.repos);
  features::MetadataSidecar sidecar;
  if (!o.meta.empty()) {
    m.input(o.meta);
    m.config("meta", o.meta);
    sidecar = features::load_metadata(o.meta);
  }
  const auto meta = features::apply_metadata(records, o.meta.empty() ? nullptr : &sidecar);

  features::ExtractionConfig cfg;
  cfg.lda.k = o.lda_k;
  cfg.lda.iters = o.lda_iters;
  cfg.lda.alpha = o.lda_alpha;
  cfg.lda.seed = c.seed;
  cfg.translator = translator_for(o.translate_cmd);
  cfg.threads = c.threads;
  cfg.latent_dim = o.latent;
  std::optional<seqembed::VraeModel> model;
  features::SequenceEmbedder embedder;
  if (o.embedder != "none") {
    m.input(o.embedder);
    model = seqembed::load_model(o.embedder);
    embedder = seqembed::make_embedder(*model);
    cfg.embedder = &embedder;
    cfg.latent_dim = model->config.latent_dim;
  }
  m.config("latent", cfg.latent_dim);
  const auto ex = features::extract_features(records, cfg);
  write_output(m, o.out, ex.table.to_csv());
  m.write(o.out + ".manifest.json");
  std::cout << json{{"repos", ex.table.rows.size()},
                    {"columns", ex.table.schema.size()},
                    {"metadata_from_sidecar", meta.from_sidecar},
                    {"metadata_derived", meta.derived},
                    {"lda_vocabulary", ex.lda.vocab.size()}}
                   .dump()
            << "\n";
}

void run_embed_train(const EmbedTrainOptions& o, const Common& c) {
  RunManifest m("embed-train");
  m.input(o.repos);
  seqembed::TrainConfig cfg;
  cfg.latent_dim = o.latent;
  cfg.hidden_size = o.hidden;
  cfg.max_seq_len = o.max_len;
  cfg.epochs = o.epochs;
  cfg.batch_size = o.batch_size;
  cfg.learning_rate = o.learning_rate;
  cfg.include_watch = o.include_watch;
  cfg.seed = c.seed;
  cfg.threads = c.threads;
  m.config("latent", o.latent);
  m.config("hidden", o.hidden);
  m.config("max_len", o.max_len);
  m.config("epochs", o.epochs);
  m.config("batch_size", o.batch_size);
  m.config("learning_rate", o.learning_rate);
  m.config("include_watch", o.include_watch);
  m.config("max_repos", o.max_repos);
  m.seed(c.seed);

  const auto records = load_repos(o.repos);
  // Records are ordered by id, so a cap takes an even stride across the
  // corpus instead of its first rows.
  const std::size_t n = records.size();
  const std::size_t take = o.max_repos ? std::min(o.max_repos, n) : n;
  std::vector<seqembed::TrainingSequence> seqs;
  seqs.reserve(take);
  for (std::size_t i = 0; i < take; ++i) {
    const auto& r = records[i * n / take];
    seqs.push_back({r.repo_id, r.events});
  }
  const auto result = seqembed::train(cfg, seqs);
  ensure_parent(o.out);
  seqembed::save_model(result.model, o.out);
  m.output(o.out);
  if (!o.log.empty()) {
    write_output(m, o.log, seqembed::format_training_log(result.curve));
  }
  m.write(o.out + ".manifest.json");
  std::cout << json{{"sequences", seqs.size()},
                    {"initial_loss", result.curve.front().mean_total},
                    {"final_loss", result.curve.back().mean_total}}
                   .dump()
            << "\n";
}

void run_evaluate(const EvalOptions& o, const Common& c) {
  RunManifest m("evaluate");
  auto p = prepare(o, c, m);
  const auto report = pipeline::evaluate_clusters(p.clusters, p.data, p.split);
  fs::create_directories(o.out_dir);
  write_output(m, in_dir(o.out_dir, "eval_report.csv"),
               pipeline::format_eval_report(report, o.positive, o.negative));
  write_output(m, in_dir(o.out_dir, "clustering_comparison.csv"),
               pipeline::format_clustering_comparison(report));
  std::string assignment = csv::format_row({"repo_id", "activity_count", "cluster"});
  for (std::size_t i = 0; i < p.data.size(); ++i) {
    assignment += csv::format_row(
        {p.data.repo_ids[i], std::to_string(p.data.activity[i]),
         std::string(pipeline::cluster_name(p.clusters.assignment[i]))});
  }
  write_output(m, in_dir(o.out_dir, "clusters.csv"), assignment);
  write_output(m, in_dir(o.out_dir, "summary.json"),
               pipeline::format_summary(&report, nullptr, nullptr, nullptr));
  m.write(in_dir(o.out_dir, "evaluate.manifest.json"));
  std::cout << json{{"repos", p.data.size()},
                    {"unlabeled", p.join.unlabeled},
                    {"other_classes", p.join.other_classes},
                    {"single_accuracy", report.single.mean.accuracy},
                    {"cluster_average_accuracy", report.cluster_average.accuracy}}
                   .dump()
            << "\n";
}

void run_ablate(const AblateOptions& o, const Common& c) {
  RunManifest m("ablate");
  m.config("mode", o.mode);
  m.config("units", o.units);
  auto p = prepare(o.eval, c, m);
  fs::create_directories(o.eval.out_dir);
  pipeline::AblationReport report;
  if (o.mode == "loo") {
    report = pipeline::ablation_leave_one_out(p.data, p.clusters, o.units, p.split);
    write_output(m, in_dir(o.eval.out_dir, "ablation_loo.csv"),
                 pipeline::format_ablation_loo(report));
    write_output(m, in_dir(o.eval.out_dir, "ablation_loo_summary.json"),
                 pipeline::format_summary(nullptr, &report, nullptr, nullptr));
  } else {
    report = pipeline::ablation_groups(p.data, p.clusters, p.split);
    write_output(m, in_dir(o.eval.out_dir, "ablation_groups.csv"),
                 pipeline::format_ablation_groups(report));
    write_output(m, in_dir(o.eval.out_dir, "ablation_groups_summary.json"),
                 pipeline::format_summary(nullptr, nullptr, &report, nullptr));
  }
  m.write(in_dir(o.eval.out_dir, "ablate_" + o.mode + ".manifest.json"));
}

void run_case_study(const CaseStudyOptions& o, const Common& c) {
  (void)c;
  RunManifest m("case-study");
  m.input(o.features);
  m.config("k", o.k);
  const auto repos = pipeline::load_company_repos(o.features);
  const auto result = pipeline::case_study(repos, o.k);
  fs::create_directories(o.out_dir);
  write_output(m, in_dir(o.out_dir, "case_study.csv"), pipeline::format_case_study(result));
  write_output(m, in_dir(o.out_dir, "pca_coords.csv"), pipeline::format_pca_coords(result));
  write_output(m, in_dir(o.out_dir, "case_study_summary.json"),
               pipeline::format_summary(nullptr, nullptr, nullptr, &result));
  m.write(in_dir(o.out_dir, "case-study.manifest.json"));
  std::cout << json{{"repos", repos.size()}, {"self_label_rate", result.self_label_rate}}.dump()
            << "\n";
}

void run_synth(const SynthOptions& o, const Common& c) {
  RunManifest m("synth");
  std::vector<synth::GroupProfile> profiles;
  if (o.profiles == "reference") {
    auto [us, cn] = synth::reference_profiles();
    profiles = {us, cn};
  } else {
    m.input(o.profiles);
    profiles = synth::profiles_from_json(read_file(o.profiles));
  }
  m.config("profiles", o.profiles);
  m.config("n", o.n);
  m.seed(c.seed);
  synth::GeneratorConfig cfg;
  cfg.n_per_group = o.n;
  cfg.seed = c.seed;
  cfg.threads = c.threads;
  const auto corpus = synth::generate_corpus(profiles, cfg);
  corpus.write(o.out_dir);
  for (const char* f : {"events.ndjson", "meta.csv", "labels.csv", "users.csv", "gazetteer.tsv"}) {
    m.output(in_dir(o.out_dir, f));
  }
  write_output(m, in_dir(o.out_dir, "profiles.json"), synth::profiles_to_json(profiles) + "\n");
  m.write(in_dir(o.out_dir, "synth.manifest.json"));
  std::cout << json{{"repos", corpus.repos.size()}, {"users", corpus.users.size()}}.dump()
            << "\n";
}

void run_stats(const StatsOptions& o, const Common& c) {
  (void)c;
  RunManifest m("stats");
  m.input(o.repos);
  m.config("compare", o.compare);
  m.config("a", o.a);
  m.config("b", o.b);
  m.config("translate_cmd", o.translate_cmd);
  const auto a = CountryLabel::parse(o.a);
  const auto b = CountryLabel::parse(o.b);
  if (!a || !b) fail(Errc::InvalidCountryCode, "--a and --b must be country codes");
  const auto records = load_repos(o.repos);
  const auto rows =
      pipeline::compare_countries(records, *a, *b, translator_for(o.translate_cmd));
  write_output(m, o.out, pipeline::format_stats(rows));
  m.write(o.out + ".manifest.json");
}

}  // namespace repoprint::cli
