// End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
// exits non-zero when any criterion fails.
#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "gradient_check.hpp"
#include "json.hpp"
#include "oracles.hpp"
#include "repoprint/analytics/distribution.hpp"
#include "repoprint/analytics/ztest.hpp"
#include "repoprint/core/binary_io.hpp"
#include "repoprint/core/csv.hpp"
#include "repoprint/core/error.hpp"
#include "repoprint/core/repo_store.hpp"
#include "repoprint/features/feature_vector.hpp"
#include "repoprint/features/fingerprint.hpp"
#include "repoprint/learn/knn.hpp"
#include "repoprint/learn/metrics.hpp"
#include "repoprint/learn/pca.hpp"
#include "repoprint/pipeline/ablation.hpp"
#include "repoprint/pipeline/clusters.hpp"
#include "repoprint/pipeline/dataset.hpp"
#include "repoprint/seqembed/checkpoint.hpp"
#include "repoprint/seqembed/vrae.hpp"
#include "repoprint/synth/generator.hpp"
#include "repoprint/synth/profile.hpp"

namespace fs = std::filesystem;
using json = nlohmann::json;
using namespace repoprint;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

class Workspace {
 public:
  explicit Workspace(fs::path root) : root_(std::move(root)) {
    fs::remove_all(root_);
    fs::create_directories(root_);
  }
  std::string path(const std::string& rel) const { return (root_ / rel).string(); }

  /// Runs the CLI and returns stdout; throws on a non-zero exit.
  std::string cli(const std::string& args, double* elapsed = nullptr) const {
    const std::string out = path("cli_stdout.txt"), err = path("cli_stderr.txt");
    const std::string cmd = "'" REPOPRINT_CLI_PATH "' " + args + " >'" + out + "' 2>'" + err + "'";
    const auto t0 = Clock::now();
    const int status = std::system(cmd.c_str());
    if (elapsed) *elapsed = seconds_since(t0);
    if (!WIFEXITED(status) || WEXITSTATUS(status) != 0) {
      throw std::runtime_error("command failed: " + args + "\n" + read_file(err));
    }
    return read_file(out);
  }

 private:
  fs::path root_;
};

json load_json(const std::string& path) { return json::parse(read_file(path)); }

/// The manifest fields that identify a run (everything but outputs and
/// timing).
json manifest_key(const std::string& path) {
  const json m = load_json(path);
  return json{{"command", m.at("command")}, {"tool_version", m.at("tool_version")},
              {"config", m.at("config")},   {"inputs", m.at("inputs")},
              {"seeds", m.at("seeds")}};
}

// ---------------------------------------------------------------- criterion 1

Outcome gradient_correctness() {
  const auto t0 = Clock::now();
  seqembed::VraeConfig cfg;
  cfg.hidden_size = 8;
  cfg.latent_dim = 4;
  cfg.max_seq_len = 8;
  double worst = 0.0;
  std::string where;
  std::size_t checked = 0;
  std::uint64_t seed = 1000;
  for (std::size_t len = 1; len <= 8; ++len) {
    for (double w : {0.0, 1.0}) {
      auto model = testing::random_model(cfg, ++seed);
      auto seq = testing::random_sequence(len, ++seed);
      Rng rng(++seed);
      std::vector<double> eps(cfg.latent_dim);
      for (auto& e : eps) e = standard_normal(rng);
      auto r = testing::gradient_check(model, seq, eps, w, 1e-5);
      checked += r.checked;
      if (r.max_rel_error > worst) {
        worst = r.max_rel_error;
        where = r.worst + fmt(" (len %zu, kl weight %.1f)", len, w);
      }
    }
  }
  const double secs = seconds_since(t0);
  return {worst <= 1e-4 && secs < 60.0,
          fmt("max relative error %.3e at %s over %zu entries; %.1f s", worst, where.c_str(),
              checked, secs)};
}

// ---------------------------------------------------------------- criterion 2

Outcome vae_sanity() {
  std::vector<double> zero(8, 0.0);
  const double kl0 = seqembed::kl_standard_normal(zero, zero);
  Rng rng(42);
  double min_kl = 1e300;
  for (int i = 0; i < 10000; ++i) {
    std::vector<double> mu(8), ls(8);
    for (auto& v : mu) v = (uniform01(rng) - 0.5) * 10.0;
    for (auto& v : ls) v = (uniform01(rng) - 0.5) * 10.0;
    if (i % 10 == 0) {
      for (auto& v : ls) v *= 1e-7;  // near the minimum, where cancellation bites
      for (auto& v : mu) v *= 1e-7;
    }
    min_kl = std::min(min_kl, seqembed::kl_standard_normal(mu, ls));
  }
  seqembed::VraeConfig cfg;
  auto model = seqembed::VraeModel::zeros(cfg);
  bool decode_ok = true, recon_ok = true;
  for (std::uint64_t s = 0; s < 5; ++s) {
    auto seq = testing::random_sequence(3 + 7 * s, s);
    std::vector<double> z(cfg.latent_dim), eps(cfg.latent_dim);
    for (auto& v : z) v = standard_normal(rng);
    for (auto& v : eps) v = standard_normal(rng);
    for (double v : seqembed::decode(model, z, seq.size()).data) decode_ok &= v == 0.5;
    auto l = seqembed::loss(model, seq, eps, 1.0);
    recon_ok &= l.recon == 0.25 && l.total == 0.25;
  }
  const bool pass = std::fabs(kl0) <= 1e-12 && min_kl >= -1e-12 && decode_ok && recon_ok;
  return {pass, fmt("KL(0,0)=%.1e, grid min %.3e, decode 0.5: %s, recon 0.25: %s", kl0, min_kl,
                    decode_ok ? "yes" : "no", recon_ok ? "yes" : "no")};
}

// ---------------------------------------------------------------- shared fixture

struct Fixture {
  std::string corpus, repos, model, model_b, log, log_b, features, eval, eval_null;
  double train_seconds = 0.0;
  double pipeline_seconds = 0.0;
};

Fixture build_fixture(const Workspace& ws) {
  Fixture f;
  f.corpus = ws.path("corpus");
  f.repos = ws.path("repos.bin");
  f.model = ws.path("model.vrae");
  f.model_b = ws.path("rerun/model.vrae");
  f.log = ws.path("train_log.csv");
  f.log_b = ws.path("rerun/train_log.csv");
  f.features = ws.path("features.csv");
  f.eval = ws.path("eval");
  f.eval_null = ws.path("eval_null");
  double t = 0.0;
  ws.cli("synth --profiles reference --n 500 --seed 1 --out-dir " + f.corpus, &t);
  f.pipeline_seconds += t;
  ws.cli("ingest --archive " + f.corpus + "/events.ndjson --users " + f.corpus +
             "/users.csv --geocoder file:" + f.corpus + "/gazetteer.tsv --out " + f.repos,
         &t);
  f.pipeline_seconds += t;
  const std::string train_args =
      "embed-train --repos " + f.repos + " --max-repos 200 --epochs 50 --seed 1 --threads 1";
  ws.cli(train_args + " --out " + f.model + " --log " + f.log, &t);
  f.train_seconds = t;
  f.pipeline_seconds += t;
  ws.cli(train_args + " --out " + f.model_b + " --log " + f.log_b);
  ws.cli("features --repos " + f.repos + " --meta " + f.corpus + "/meta.csv --embedder " +
             f.model + " --lda-seed 1 --out " + f.features,
         &t);
  f.pipeline_seconds += t;
  ws.cli("evaluate --features " + f.features + " --seeds 5 --seed 1 --out-dir " + f.eval, &t);
  f.pipeline_seconds += t;
  ws.cli("evaluate --features " + f.features + " --seeds 5 --seed 1 --shuffle-labels --out-dir " +
         f.eval_null);
  return f;
}

// ---------------------------------------------------------------- criterion 3

Outcome training_decrease(const Fixture& f) {
  auto rows = csv::Table::parse(read_file(f.log));
  const auto col = rows.column("mean_total");
  const double first = std::stod(rows.rows().front()[col]);
  const double last = std::stod(rows.rows().back()[col]);
  const bool same_log = read_file(f.log) == read_file(f.log_b);
  const bool same_model = read_file(f.model) == read_file(f.model_b);
  const bool pass = rows.rows().size() == 50 && last <= 0.7 * first && same_log && same_model &&
                    f.train_seconds < 300.0;
  return {pass, fmt("epoch 1 %.5f -> epoch 50 %.5f (ratio %.3f); rerun identical: log %s, "
                    "model %s; %.1f s",
                    first, last, last / first, same_log ? "yes" : "no",
                    same_model ? "yes" : "no", f.train_seconds)};
}

// ---------------------------------------------------------------- criterion 4

Outcome order_sensitivity(const Fixture& f) {
  using E = EventType;
  const std::vector<E> r1 = {E::IssueComment, E::IssueComment, E::Issues,
                             E::Issues,       E::Push,         E::Push};
  const std::vector<E> r2 = {E::IssueComment, E::Issues, E::Push,
                             E::IssueComment, E::Issues, E::Push};
  auto to_record = [](const std::string& id, const std::vector<E>& types) {
    std::vector<Event> ev;
    for (std::size_t i = 0; i < types.size(); ++i) {
      ev.push_back(Event{"dev", types[i], id, static_cast<UnixSeconds>(1500000000 + 3600 * i), ""});
    }
    return RepoRecord::from_events(id, ev);
  };
  const auto model = seqembed::load_model(f.model);
  const auto a = to_record("r1", r1), b = to_record("r2", r2);
  const auto embed = seqembed::make_embedder(model);
  const auto ea = embed.embed(a.events), eb = embed.embed(b.events);
  double d2 = 0.0;
  for (std::size_t i = 0; i < ea.size(); ++i) d2 += (ea[i] - eb[i]) * (ea[i] - eb[i]);
  const bool same_fp =
      features::activity_fingerprint(a).freqs == features::activity_fingerprint(b).freqs;
  const double dist = std::sqrt(d2);
  return {dist > 1e-6 && same_fp,
          fmt("embedding distance %.3e; fingerprints identical: %s", dist,
              same_fp ? "yes" : "no")};
}

// ---------------------------------------------------------------- criterion 5

Outcome protocol_reproduction(const Fixture& f) {
  const auto clusters = csv::Table::parse(read_file(f.eval + "/clusters.csv"));
  std::set<std::string> ids;
  std::map<std::string, std::size_t> sizes;
  for (const auto& row : clusters.rows()) {
    ids.insert(row[clusters.column("repo_id")]);
    ++sizes[row[clusters.column("cluster")]];
  }
  const bool partition =
      clusters.rows().size() == 1000 && ids.size() == 1000 && sizes.size() == 4;

  const json ev = load_json(f.eval + "/summary.json").at("evaluation");
  bool beats_baseline = ev.at("clusters").size() == 4;
  std::string per_cluster;
  for (const auto& c : ev.at("clusters")) {
    const double acc = c.at("accuracy"), base = c.at("majority_baseline");
    beats_baseline &= acc > base;
    per_cluster += fmt(" %s=%.3f/%.3f", c.at("group").get<std::string>().c_str(), acc, base);
  }
  const double combined = ev.at("cluster_average").at("accuracy");
  const double single = ev.at("single").at("accuracy");
  const bool pass = partition && beats_baseline && combined >= 0.85 && f.pipeline_seconds < 900.0;
  return {pass, fmt("partition %s (%zu repos); accuracy/baseline:%s; combined %.4f, single "
                    "%.4f; %.1f s",
                    partition ? "exact" : "BROKEN", ids.size(), per_cluster.c_str(), combined,
                    single, f.pipeline_seconds)};
}

// ---------------------------------------------------------------- criterion 6

Outcome clustering_direction(const Fixture& f) {
  const json ev = load_json(f.eval + "/summary.json").at("evaluation");
  const double single = ev.at("single").at("accuracy");
  const double avg = ev.at("cluster_average").at("accuracy");
  const std::string formatted = ev.at("comparison").at("accuracy").at("formatted");
  const auto cmp = read_file(f.eval + "/clustering_comparison.csv");
  const bool shape = formatted.size() == 13 && formatted[6] == '/' &&
                     cmp.find(formatted) != std::string::npos;
  return {avg >= single - 0.02 && shape,
          fmt("single/cluster-average accuracy %s (threshold single - 0.02)", formatted.c_str())};
}

// ---------------------------------------------------------------- criterion 7

Outcome oracle_equivalences() {
  std::string detail;
  bool pass = true;
  Rng rng(7);

  double kl_err = 0.0;
  std::gamma_distribution<double> gamma(0.8, 1.0);
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = 2 + uniform_index(rng, 20);
    std::vector<double> p(n), q(n);
    double sp = 0, sq = 0;
    for (std::size_t i = 0; i < n; ++i) {
      p[i] = (t % 4 == 0 && i % 3 == 0) ? 0.0 : gamma(rng);
      q[i] = (t % 5 == 0 && i % 4 == 1) ? 0.0 : gamma(rng);
      sp += p[i];
      sq += q[i];
    }
    for (auto& v : p) v /= sp;
    for (auto& v : q) v /= sq;
    kl_err = std::max(kl_err, std::fabs(analytics::kl_divergence(p, q) - testing::kl_oracle(p, q)));
  }
  pass &= kl_err <= 1e-12;
  detail += fmt("KL max err %.1e", kl_err);

  double z_err = 0.0;
  for (int t = 0; t < 50; ++t) {
    std::vector<double> a(3 + uniform_index(rng, 50)), b(3 + uniform_index(rng, 50));
    for (auto& v : a) v = 2.0 * standard_normal(rng) + 1.0;
    for (auto& v : b) v = 0.5 * standard_normal(rng);
    z_err = std::max(z_err, std::fabs(analytics::two_sample_z_test(a, b).z - testing::z_oracle(a, b)));
  }
  pass &= z_err <= 1e-9;
  detail += fmt("; z max err %.1e", z_err);

  std::size_t knn_mismatch = 0;
  learn::Matrix train(80, 3);
  std::vector<std::string> labels(80);
  for (std::size_t i = 0; i < 80; ++i) {
    for (std::size_t j = 0; j < 3; ++j) train(i, j) = static_cast<double>(uniform_index(rng, 5));
    labels[i] = uniform_index(rng, 2) ? "US" : "CN";
  }
  for (int q = 0; q < 100; ++q) {
    std::vector<double> query(3);
    for (auto& v : query) v = uniform01(rng) * 5.0;
    const std::size_t k = 1 + uniform_index(rng, 9);
    std::vector<std::pair<double, std::size_t>> scan;
    for (std::size_t i = 0; i < 80; ++i) {
      double s = 0;
      for (std::size_t j = 0; j < 3; ++j) s += (train(i, j) - query[j]) * (train(i, j) - query[j]);
      scan.emplace_back(s, i);
    }
    std::sort(scan.begin(), scan.end());
    std::vector<std::size_t> expect;
    for (std::size_t i = 0; i < k; ++i) expect.push_back(scan[i].second);
    knn_mismatch += learn::nearest_neighbors(train, query, k) != expect;
  }
  pass &= knn_mismatch == 0;
  detail += fmt("; KNN mismatches %zu/100", knn_mismatch);

  double min_dot = 1.0;
  for (int t = 0; t < 10; ++t) {
    std::vector<testing::Vec3> pts(300);
    learn::Matrix X(300, 3);
    testing::Mat3 mix;
    for (auto& r : mix)
      for (auto& v : r) v = standard_normal(rng);
    for (std::size_t i = 0; i < 300; ++i) {
      const double s[3] = {3.0 * standard_normal(rng), 1.2 * standard_normal(rng),
                           0.2 * standard_normal(rng)};
      for (int j = 0; j < 3; ++j) {
        pts[i][j] = X(i, j) = mix[j][0] * s[0] + mix[j][1] * s[1] + mix[j][2] * s[2];
      }
    }
    const auto eig = testing::eigen3(testing::covariance3(pts));
    const auto p = learn::pca_2d(X);
    for (int c = 0; c < 2; ++c) {
      double dot = 0;
      for (int j = 0; j < 3; ++j) dot += p.components[c][j] * eig[c].second[j];
      min_dot = std::min(min_dot, std::fabs(dot));
    }
  }
  pass &= min_dot >= 0.99;
  detail += fmt("; PCA min |dot| %.6f", min_dot);

  // TP 3, FN 1, FP 2, TN 4
  const std::vector<std::string> t = {"US", "US", "US", "US", "CN", "CN", "CN", "CN", "CN", "CN"};
  const std::vector<std::string> p = {"US", "US", "US", "CN", "US", "US", "CN", "CN", "CN", "CN"};
  const auto m = learn::compute_metrics(t, p, "US");
  const bool metrics_ok =
      m.accuracy == 7.0 / 10.0 && m.of("US").precision == 3.0 / 5.0 &&
      m.of("US").recall == 3.0 / 4.0 && m.of("CN").precision == 4.0 / 5.0 &&
      m.of("CN").recall == 4.0 / 6.0 && m.majority_baseline == 6.0 / 10.0 &&
      std::fabs(m.of("US").f1 - 2.0 / 3.0) <= 1e-15 &&
      std::fabs(m.of("CN").f1 - 8.0 / 11.0) <= 1e-15 &&
      std::fabs(m.macro_f1 - (2.0 / 3.0 + 8.0 / 11.0) / 2.0) <= 1e-15;
  pass &= metrics_ok;
  detail += metrics_ok ? "; metrics example exact" : "; metrics example MISMATCH";
  return {pass, detail};
}

// ---------------------------------------------------------------- criterion 8

Outcome ablation_harness(const Workspace& ws, const Fixture& f) {
  std::string detail;
  bool pass = true;

  // (a) a constant column added to the fixture features
  auto table = features::FeatureTable::load(f.features);
  auto names = table.schema.names();
  names.push_back("constant");
  table.schema = features::FeatureSchema::from_names(names);
  for (auto& row : table.rows) row.values.push_back(1.0);
  const std::vector<std::string> allowed = {"US", "CN"};
  const auto data = pipeline::dataset_from_table(table, allowed);
  const auto clusters = pipeline::quartile_clusters(data.activity);
  const std::vector<std::string> constant = {"constant"};
  const auto loo = pipeline::ablation_leave_one_out(data, clusters, constant, {});
  double max_abs = 0.0;
  for (const auto& c : loo.loo) max_abs = std::max(max_abs, std::fabs(c.delta));
  pass &= loo.loo.size() == 4 && max_abs == 0.0;
  detail += fmt("constant-column |delta| max %.1e", max_abs);

  // (b) groups differing only in their event-type process
  auto [us, cn] = synth::reference_profiles();
  synth::GroupProfile fp_cn = us;
  fp_cn.name = "fp-cn";
  fp_cn.label = cn.label;
  fp_cn.type_dist = cn.type_dist;
  fp_cn.transition = cn.transition;
  fp_cn.locations = cn.locations;
  us.name = "fp-us";
  const std::string dir = ws.path("fingerprint_only");
  fs::create_directories(dir);
  write_file(dir + "/profiles.json", synth::profiles_to_json({us, fp_cn}));
  ws.cli("synth --profiles " + dir + "/profiles.json --n 300 --seed 2 --out-dir " + dir);
  ws.cli("ingest --archive " + dir + "/events.ndjson --users " + dir + "/users.csv --geocoder file:" +
         dir + "/gazetteer.tsv --out " + dir + "/repos.bin");
  ws.cli("features --repos " + dir + "/repos.bin --meta " + dir + "/meta.csv --embedder none --out " +
         dir + "/features.csv");
  ws.cli("ablate --mode loo --units profile,activity,sequence --features " + dir +
         "/features.csv --seeds 5 --out-dir " + dir + "/ablate");
  const json cells = load_json(dir + "/ablate/ablation_loo_summary.json").at("ablation_loo");
  std::map<std::string, std::map<std::string, double>> delta;
  for (const auto& c : cells) delta[c.at("cluster")][c.at("feature")] = c.at("delta");
  bool strictly = delta.size() == 4;
  std::string per;
  for (const auto& [cluster, d] : delta) {
    const double act = d.at("activity");
    strictly &= act < d.at("profile") && act < d.at("sequence");
    per += fmt(" %s: activity %+.3f profile %+.3f sequence %+.3f;", cluster.c_str(), act,
               d.at("profile"), d.at("sequence"));
  }
  pass &= strictly;
  detail += "; fingerprint-only fixture" + per;

  // (c) the group-ablation grid on the main fixture
  ws.cli("ablate --mode groups --features " + f.features + " --seeds 5 --out-dir " +
         ws.path("ablate_groups"));
  const auto grid = csv::Table::parse(read_file(ws.path("ablate_groups/ablation_groups.csv")));
  std::set<std::pair<std::string, std::string>> seen;
  for (const auto& row : grid.rows()) {
    seen.insert({row[grid.column("cluster")], row[grid.column("group")]});
  }
  pass &= grid.rows().size() == 28 && seen.size() == 28;
  detail += fmt(" group grid %zu cells", seen.size());
  return {pass, detail};
}

// ---------------------------------------------------------------- criterion 9

Outcome null_control(const Fixture& f) {
  const json ev = load_json(f.eval_null + "/summary.json").at("evaluation");
  const double acc = ev.at("single").at("accuracy");
  const double base = ev.at("single").at("majority_baseline");
  return {std::fabs(acc - base) <= 0.1,
          fmt("shuffled-label accuracy %.4f vs majority baseline %.4f", acc, base)};
}

// ---------------------------------------------------------------- criterion 10

Outcome determinism_and_formats(const Workspace& ws, const Fixture& f) {
  std::vector<std::string> failures;
  auto same_files = [&](const std::string& what, const std::string& a, const std::string& b,
                        const std::vector<std::string>& files, const std::string& manifest) {
    if (manifest_key(a + "/" + manifest) != manifest_key(b + "/" + manifest)) {
      failures.push_back(what + " manifest key");
    }
    for (const auto& file : files) {
      if (read_file(a + "/" + file) != read_file(b + "/" + file)) {
        failures.push_back(what + ":" + file);
      }
    }
  };
  const std::string r = ws.path("rerun");
  fs::create_directories(r);

  ws.cli("synth --profiles reference --n 500 --seed 1 --out-dir " + r + "/corpus");
  same_files("synth", f.corpus, r + "/corpus",
             {"events.ndjson", "meta.csv", "labels.csv", "users.csv", "gazetteer.tsv",
              "profiles.json"},
             "synth.manifest.json");

  ws.cli("ingest --archive " + f.corpus + "/events.ndjson --users " + f.corpus +
         "/users.csv --geocoder file:" + f.corpus + "/gazetteer.tsv --out " + r + "/repos.bin");
  same_files("ingest", ws.path(""), r, {"repos.bin"}, "repos.bin.manifest.json");

  same_files("embed-train", ws.path(""), r, {"model.vrae", "train_log.csv"},
             "model.vrae.manifest.json");

  ws.cli("features --repos " + f.repos + " --meta " + f.corpus + "/meta.csv --embedder " +
         f.model + " --lda-seed 1 --out " + r + "/features.csv");
  same_files("features", ws.path(""), r, {"features.csv"}, "features.csv.manifest.json");

  ws.cli("evaluate --features " + f.features + " --seeds 5 --seed 1 --out-dir " + r + "/eval");
  same_files("evaluate", f.eval, r + "/eval",
             {"eval_report.csv", "clustering_comparison.csv", "clusters.csv", "summary.json"},
             "evaluate.manifest.json");

  for (const std::string mode : {"loo", "groups"}) {
    const std::string args = "ablate --mode " + mode + " --features " + f.features + " --seeds 5";
    if (mode == "loo") ws.cli(args + " --out-dir " + ws.path("ablate_loo"));
    ws.cli(args + " --out-dir " + r + "/ablate_" + mode);
    same_files("ablate " + mode, ws.path("ablate_" + mode), r + "/ablate_" + mode,
               {"ablation_" + mode + ".csv", "ablation_" + mode + "_summary.json"},
               "ablate_" + mode + ".manifest.json");
  }

  // company-labelled repos derived from the feature table
  {
    const auto table = csv::Table::parse(read_file(f.features));
    std::string out = "company,";
    const auto& header = table.header();
    for (std::size_t j = 0; j < header.size(); ++j) out += (j ? "," : "") + csv::escape(header[j]);
    out += "\n";
    for (std::size_t i = 0; i < table.rows().size(); i += 5) {
      const auto& row = table.rows()[i];
      csv::Row full = {row[table.column("country")] == "US" ? "acme" : "zenith"};
      full.insert(full.end(), row.begin(), row.end());
      out += csv::format_row(full);
    }
    write_file(ws.path("company_repos.csv"), out);
  }
  for (const std::string d : {ws.path("case_study"), r + "/case_study"}) {
    ws.cli("case-study --features " + ws.path("company_repos.csv") + " --k 5 --out-dir " + d);
  }
  same_files("case-study", ws.path("case_study"), r + "/case_study",
             {"case_study.csv", "pca_coords.csv", "case_study_summary.json"},
             "case-study.manifest.json");

  ws.cli("stats --repos " + f.repos + " --out " + ws.path("stats.csv"));
  ws.cli("stats --repos " + f.repos + " --out " + r + "/stats.csv");
  same_files("stats", ws.path(""), r, {"stats.csv"}, "stats.csv.manifest.json");

  // binary formats
  const std::string ckpt = read_file(f.model);
  const bool ckpt_round = seqembed::serialize_model(seqembed::deserialize_model(ckpt)) == ckpt;
  const std::string repos = read_file(f.repos);
  const bool repos_round = encode_repos(decode_repos(repos)) == repos;
  bool truncation_rejected = true;
  for (std::size_t cut : {std::size_t{0}, std::size_t{3}, ckpt.size() / 2, ckpt.size() - 1}) {
    try {
      seqembed::deserialize_model(ckpt.substr(0, cut));
      truncation_rejected = false;
    } catch (const Error& e) {
      truncation_rejected &= e.code() == Errc::CorruptCheckpoint;
    }
  }
  if (!ckpt_round) failures.push_back("checkpoint round trip");
  if (!repos_round) failures.push_back("repos.bin round trip");
  if (!truncation_rejected) failures.push_back("truncated checkpoint");

  std::string detail =
      "9 commands re-run byte-identical; checkpoint and repos.bin round-trip; truncation -> "
      "CorruptCheckpoint";
  if (!failures.empty()) {
    detail = "differences:";
    for (const auto& x : failures) detail += " " + x;
  }
  return {failures.empty(), detail};
}

}  // namespace

int main(int argc, char** argv) {
  fs::path work = fs::temp_directory_path() / "repoprint-acceptance";
  for (int i = 1; i + 1 < argc; ++i) {
    if (std::string(argv[i]) == "--work-dir") work = argv[i + 1];
  }
  Workspace ws(work);
  const auto t0 = Clock::now();
  int failed = 0;
  auto report = [&](int n, const char* title, const std::function<Outcome()>& check) {
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    failed += !o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << n << " (" << title
              << "): " << o.detail << std::endl;
  };

  report(1, "gradient correctness", gradient_correctness);
  report(2, "VAE sanity", vae_sanity);

  Fixture fixture;
  bool have_fixture = true;
  std::string fixture_error;
  try {
    fixture = build_fixture(ws);
  } catch (const std::exception& e) {
    have_fixture = false;
    fixture_error = e.what();
  }
  auto with_fixture = [&](auto fn) {
    return [&, fn]() -> Outcome {
      if (!have_fixture) return {false, "fixture pipeline failed: " + fixture_error};
      return fn();
    };
  };
  report(3, "training decrease", with_fixture([&] { return training_decrease(fixture); }));
  report(4, "order sensitivity", with_fixture([&] { return order_sensitivity(fixture); }));
  report(5, "end-to-end protocol", with_fixture([&] { return protocol_reproduction(fixture); }));
  report(6, "clustering benefit direction",
         with_fixture([&] { return clustering_direction(fixture); }));
  report(7, "oracle equivalences", oracle_equivalences);
  report(8, "ablation harness", with_fixture([&] { return ablation_harness(ws, fixture); }));
  report(9, "null control", with_fixture([&] { return null_control(fixture); }));
  report(10, "determinism and formats",
         with_fixture([&] { return determinism_and_formats(ws, fixture); }));

  std::cout << (failed ? "FAIL" : "PASS") << " acceptance: " << 10 - failed << "/10 criteria, "
            << fmt("%.1f s", seconds_since(t0)) << std::endl;
  return failed ? 1 : 0;
}
