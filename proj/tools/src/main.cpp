#include <cstdlib>
#include <iostream>

#include "CLI11.hpp"
#include "commands.hpp"
#include "json.hpp"
#include "repoprint/core/error.hpp"
#include "repoprint/version.hpp"

namespace {

using namespace repoprint::cli;

int report_error(std::string_view code, const std::string& message) {
  nlohmann::json j{{"error", code}, {"message", message}};
  std::cerr << j.dump() << "\n";
  return 1;
}

std::uint64_t env_seed() {
  if (const char* s = std::getenv("REPOPRINT_SEED"); s && *s) {
    try {
      return std::stoull(s);
    } catch (const std::exception&) {
      std::cerr << "warning: ignoring non-numeric REPOPRINT_SEED\n";
    }
  }
  return 1;
}

void add_eval_flags(CLI::App* sub, EvalOptions& o) {
  sub->add_option("--features", o.features, "Feature CSV")->required()->check(CLI::ExistingFile);
  sub->add_option("--labels", o.labels, "repo_id,country CSV (default: the country column)")
      ->check(CLI::ExistingFile);
  sub->add_option("--cuts", o.cuts, "auto or q25,q50,q75 activity cut points");
  sub->add_option("--seeds", o.seeds, "Number of seeded 80/20 repeats")->check(CLI::PositiveNumber);
  sub->add_option("--positive", o.positive, "Positive class label");
  sub->add_option("--negative", o.negative, "Negative class label");
  sub->add_flag("--shuffle-labels", o.shuffle_labels, "Permute labels (null control)");
  sub->add_option("--out-dir", o.out_dir, "Report directory")->required();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"repoprint: repository fingerprinting from event logs"};
  app.set_version_flag("--version", repoprint::kVersion);
  app.require_subcommand(1);

  Common common;
  common.seed = env_seed();
  auto add_common = [&](CLI::App* sub, bool seeded) {
    sub->add_option("--threads", common.threads, "Worker cap (0 = hardware)");
    if (seeded) {
      sub->add_option("--seed", common.seed, "Seed (default: $REPOPRINT_SEED or 1)");
    }
  };

  IngestOptions ingest;
  auto* s_ingest = app.add_subcommand("ingest", "Parse archives, curate repos, assign countries");
  s_ingest->add_option("--archive", ingest.archives, "Archive file or glob (repeatable)")->required();
  s_ingest->add_option("--out", ingest.out, "Output repos.bin")->required();
  s_ingest->add_option("--min-events", ingest.min_events, "Minimum in-window events");
  s_ingest->add_flag("--require-create,!--no-require-create", ingest.require_create,
                     "Require an in-window Create event");
  s_ingest->add_option("--window", ingest.window, "Collection window A..B (inclusive)");
  s_ingest->add_option("--geocoder", ingest.geocoder, "file:<gazetteer.tsv> or http:<url>");
  s_ingest->add_option("--cache", ingest.cache, "Geocode cache TSV (read and updated)");
  s_ingest->add_option("--users", ingest.users, "actor,location,company CSV")->check(CLI::ExistingFile);
  add_common(s_ingest, false);

  FeaturesOptions feats;
  auto* s_feat = app.add_subcommand("features", "Extract per-repo feature vectors");
  s_feat->add_option("--repos", feats.repos, "repos.bin")->required()->check(CLI::ExistingFile);
  s_feat->add_option("--meta", feats.meta, "Metadata sidecar CSV")->check(CLI::ExistingFile);
  s_feat->add_option("--lda-k", feats.lda_k, "Number of topics (the schema carries 2)");
  s_feat->add_option("--lda-seed", common.seed, "LDA seed");
  s_feat->add_option("--lda-iters", feats.lda_iters, "Gibbs sweeps");
  s_feat->add_option("--lda-alpha", feats.lda_alpha, "Document-topic prior (0 = 50/k)");
  s_feat->add_option("--embedder", feats.embedder, "model.vrae or none");
  s_feat->add_option("--latent", feats.latent, "Sequence width when --embedder none");
  s_feat->add_option("--translate-cmd", feats.translate_cmd, "Shell filter mapping comments to English");
  s_feat->add_option("--out", feats.out, "Output features.csv")->required();
  s_feat->add_option("--threads", common.threads, "Worker cap (0 = hardware)");

  EmbedTrainOptions et;
  auto* s_et = app.add_subcommand("embed-train", "Train the sequence autoencoder");
  s_et->add_option("--repos", et.repos, "repos.bin")->required()->check(CLI::ExistingFile);
  s_et->add_option("--latent", et.latent, "Latent width")->check(CLI::PositiveNumber);
  s_et->add_option("--hidden", et.hidden, "LSTM hidden size")->check(CLI::PositiveNumber);
  s_et->add_option("--max-len", et.max_len, "Maximum sequence length")->check(CLI::PositiveNumber);
  s_et->add_option("--epochs", et.epochs, "Epochs")->check(CLI::PositiveNumber);
  s_et->add_option("--batch-size", et.batch_size, "Mini-batch size")->check(CLI::PositiveNumber);
  s_et->add_option("--lr", et.learning_rate, "Adam learning rate");
  s_et->add_flag("--include-watch", et.include_watch, "Keep Watch events in sequences");
  s_et->add_option("--max-repos", et.max_repos, "Train on N repos evenly spaced by id (0 = all)");
  s_et->add_option("--out", et.out, "Output model.vrae")->required();
  s_et->add_option("--log", et.log, "Training log CSV");
  add_common(s_et, true);

  EvalOptions ev;
  auto* s_eval = app.add_subcommand("evaluate", "Per-cluster logistic regression vs majority baseline");
  add_eval_flags(s_eval, ev);
  add_common(s_eval, true);

  AblateOptions ab;
  auto* s_ab = app.add_subcommand("ablate", "Leave-one-out or feature-group ablation");
  add_eval_flags(s_ab, ab.eval);
  s_ab->add_option("--mode", ab.mode, "loo or groups")->check(CLI::IsMember({"loo", "groups"}));
  s_ab->add_option("--units", ab.units, "Features or blocks to withhold (loo)")->delimiter(',');
  add_common(s_ab, true);

  CaseStudyOptions cs;
  auto* s_cs = app.add_subcommand("case-study", "Company KNN labels and PCA projection");
  s_cs->add_option("--features", cs.features, "company,repo_id,<features> CSV")
      ->required()->check(CLI::ExistingFile);
  s_cs->add_option("--k", cs.k, "Neighbors")->check(CLI::PositiveNumber);
  s_cs->add_option("--out-dir", cs.out_dir, "Report directory")->required();

  SynthOptions sy;
  auto* s_sy = app.add_subcommand("synth", "Generate a labelled synthetic corpus");
  s_sy->add_option("--profiles", sy.profiles, "reference or a profile JSON file");
  s_sy->add_option("--n", sy.n, "Repos per group")->check(CLI::PositiveNumber);
  s_sy->add_option("--out-dir", sy.out_dir, "Corpus directory")->required();
  add_common(s_sy, true);

  StatsOptions st;
  auto* s_st = app.add_subcommand("stats", "Country comparison: KL divergence and z-tests");
  s_st->add_option("--repos", st.repos, "repos.bin")->required()->check(CLI::ExistingFile);
  s_st->add_option("--compare", st.compare, "Grouping")->check(CLI::IsMember({"country"}));
  s_st->add_option("--a", st.a, "First country");
  s_st->add_option("--b", st.b, "Second country");
  s_st->add_option("--translate-cmd", st.translate_cmd, "Shell filter mapping comments to English");
  s_st->add_option("--out", st.out, "Output stats.csv")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    std::cerr << app.help();
    return 2;
  }

  try {
    if (*s_ingest) run_ingest(ingest, common);
    else if (*s_feat) run_features(feats, common);
    else if (*s_et) run_embed_train(et, common);
    else if (*s_eval) run_evaluate(ev, common);
    else if (*s_ab) run_ablate(ab, common);
    else if (*s_cs) run_case_study(cs, common);
    else if (*s_sy) run_synth(sy, common);
    else if (*s_st) run_stats(st, common);
  } catch (const repoprint::Error& e) {
    return report_error(repoprint::errc_name(e.code()), e.what());
  } catch (const std::exception& e) {
    return report_error("Internal", e.what());
  }
  return 0;
}
