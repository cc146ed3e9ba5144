#include <gtest/gtest.h>

#include <cmath>

#include "gradient_check.hpp"
#include "repoprint/core/binary_io.hpp"
#include "repoprint/core/error.hpp"
#include "repoprint/seqembed/checkpoint.hpp"
#include "repoprint/seqembed/lstm.hpp"
#include "repoprint/seqembed/trainer.hpp"
#include "repoprint/seqembed/vrae.hpp"
#include "test_support.hpp"

using namespace repoprint;
using namespace repoprint::seqembed;
using repoprint::testing::gradient_check;
using repoprint::testing::random_model;
using repoprint::testing::random_sequence;
using E = EventType;

namespace {

Errc code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected repoprint::Error";
  return Errc::IoError;
}

double sig(double x) { return 1.0 / (1.0 + std::exp(-x)); }

VraeConfig small_config() {
  VraeConfig cfg;
  cfg.latent_dim = 4;
  cfg.hidden_size = 8;
  cfg.max_seq_len = 64;
  return cfg;
}

const std::vector<E> kR1 = {E::IssueComment, E::IssueComment, E::Issues,
                            E::Issues,       E::Push,         E::Push};
const std::vector<E> kR2 = {E::IssueComment, E::Issues, E::Push,
                            E::IssueComment, E::Issues, E::Push};

}  // namespace

TEST(Lstm, StepMatchesScalarReference) {
  auto p = LstmParams::zeros(1, 1);
  // gate order: input, forget, cell, output
  const double w[4] = {0.3, -0.2, 0.5, 0.1};
  const double u[4] = {-0.4, 0.6, 0.2, -0.3};
  const double b[4] = {0.05, 1.0, -0.1, 0.2};
  for (int g = 0; g < 4; ++g) {
    p.W(0, g) = w[g];
    p.U(0, g) = u[g];
    p.b(0, g) = b[g];
  }
  const double x = 0.7, h0 = -0.25, c0 = 0.4;
  auto pre = [&](int g) { return w[g] * x + u[g] * h0 + b[g]; };
  const double i = sig(pre(0)), f = sig(pre(1)), g = std::tanh(pre(2)), o = sig(pre(3));
  const double c = f * c0 + i * g;
  const double h = o * std::tanh(c);
  std::vector<double> hp = {h0}, cp = {c0}, xv = {x};
  auto s = lstm_step(p, hp, cp, xv);
  EXPECT_NEAR(s.c[0], c, 1e-15);
  EXPECT_NEAR(s.h[0], h, 1e-15);
  std::vector<double> wrong = {1.0, 2.0};
  EXPECT_EQ(code_of([&] { lstm_step(p, hp, cp, wrong); }), Errc::ShapeMismatch);
}

TEST(Lstm, HiddenStateStaysBounded) {
  Rng rng(3);
  auto p = LstmParams::zeros(14, 6);
  for (auto* t : {&p.W, &p.U, &p.b}) {
    for (auto& v : t->data) v = (uniform01(rng) - 0.5) * 20.0;
  }
  std::vector<double> h(6, 0.0), c(6, 0.0);
  for (int step = 0; step < 200; ++step) {
    auto x = one_hot(event_type_at(step % 14));
    auto s = lstm_step(p, h, c, x);
    for (double v : s.h) EXPECT_LT(std::fabs(v), 1.0);
    h = s.h;
    c = s.c;
  }
}

TEST(Vrae, OneHotAndLatentSample) {
  auto v = one_hot(E::Fork);
  for (std::size_t i = 0; i < kChannels; ++i) EXPECT_EQ(v[i], i == 4 ? 1.0 : 0.0);
  std::vector<double> mu = {1.0, 2.0}, ls = {0.0, std::log(2.0)}, eps = {1.0, 1.0};
  auto z = sample_latent(mu, ls, eps);
  EXPECT_DOUBLE_EQ(z[0], 2.0);
  EXPECT_NEAR(z[1], 4.0, 1e-15);
  std::vector<double> short_eps = {1.0};
  EXPECT_EQ(code_of([&] { sample_latent(mu, ls, short_eps); }), Errc::ShapeMismatch);
}

TEST(Vrae, KlTermProperties) {
  std::vector<double> zero(8, 0.0);
  EXPECT_NEAR(kl_standard_normal(zero, zero), 0.0, 1e-12);
  Rng rng(11);
  for (int i = 0; i < 10000; ++i) {
    std::vector<double> mu = {(uniform01(rng) - 0.5) * 10, (uniform01(rng) - 0.5) * 1e-6};
    std::vector<double> ls = {(uniform01(rng) - 0.5) * 10, (uniform01(rng) - 0.5) * 1e-6};
    const double kl = kl_standard_normal(mu, ls);
    EXPECT_GE(kl, -1e-12);
    // the closed form is a sum of per-dimension terms
    const double d0 = kl_standard_normal(std::span(mu).first(1), std::span(ls).first(1));
    const double d1 = kl_standard_normal(std::span(mu).last(1), std::span(ls).last(1));
    EXPECT_NEAR(kl, d0 + d1, 1e-12);
  }
  std::vector<double> mu = {1.0}, ls = {0.0};
  EXPECT_DOUBLE_EQ(kl_standard_normal(mu, ls), 0.5);
}

TEST(Vrae, ZeroModelDecodesOneHalf) {
  auto m = VraeModel::zeros(small_config());
  auto enc = encode(m, kR1);
  for (double v : enc.mu) EXPECT_EQ(v, 0.0);
  for (double v : enc.log_sigma) EXPECT_EQ(v, 0.0);
  std::vector<double> z = {0.3, -1.0, 2.0, 0.0};
  auto out = decode(m, z, 5);
  ASSERT_EQ(out.rows, 5u);
  ASSERT_EQ(out.cols, kChannels);
  for (double v : out.data) EXPECT_EQ(v, 0.5);
  std::vector<double> eps = {0.1, 0.2, 0.3, 0.4};
  auto l = loss(m, kR1, eps, 1.0);
  EXPECT_EQ(l.recon, 0.25);
  EXPECT_EQ(l.kl, 0.0);
  EXPECT_EQ(l.total, 0.25);
}

TEST(Vrae, InputValidation) {
  auto m = VraeModel::zeros(small_config());
  std::vector<E> empty;
  EXPECT_EQ(code_of([&] { encode(m, empty); }), Errc::EmptySequence);
  std::vector<E> too_long(65, E::Push);
  EXPECT_EQ(code_of([&] { encode(m, too_long); }), Errc::SequenceTooLong);
}

TEST(Vrae, GradientMatchesFiniteDifferences) {
  auto cfg = small_config();
  const std::size_t lengths[] = {1, 2, 5, 8};
  const double weights[] = {0.0, 0.5, 1.0};
  std::uint64_t seed = 100;
  for (std::size_t len : lengths) {
    for (double w : weights) {
      auto m = random_model(cfg, ++seed);
      auto seq = random_sequence(len, ++seed);
      Rng rng(++seed);
      std::vector<double> eps(cfg.latent_dim);
      for (auto& e : eps) e = standard_normal(rng);
      auto r = gradient_check(m, seq, eps, w);
      EXPECT_LE(r.max_rel_error, 1e-4)
          << "len " << len << " w " << w << " worst " << r.worst;
      EXPECT_GT(r.checked, 1500u);
    }
  }
}

TEST(Vrae, BackwardLossMatchesForward) {
  auto cfg = small_config();
  auto m = random_model(cfg, 5);
  auto seq = random_sequence(7, 6);
  std::vector<double> eps = {0.5, -0.5, 1.0, 0.0};
  auto l = loss(m, seq, eps, 0.3);
  auto g = backward(m, seq, eps, 0.3);
  EXPECT_DOUBLE_EQ(g.loss.total, l.total);
  EXPECT_NEAR(l.total, l.recon + 0.3 * l.kl, 1e-15);

  auto acc = VraeParams::zeros(cfg.latent_dim, cfg.hidden_size);
  accumulate_gradients(m, seq, eps, 0.3, 0.5, acc);
  std::vector<double> a, b;
  acc.for_each([&](const std::string&, const Tensor& t) { a.insert(a.end(), t.data.begin(), t.data.end()); });
  g.grad.for_each([&](const std::string&, const Tensor& t) { b.insert(b.end(), t.data.begin(), t.data.end()); });
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_NEAR(a[i], 0.5 * b[i], 1e-15);
}

TEST(Vrae, EmbeddingIsOrderSensitive) {
  auto m = random_model(small_config(), 17, 0.3);
  auto a = embed(m, kR1);
  auto b = embed(m, kR2);
  double d2 = 0;
  for (std::size_t i = 0; i < a.size(); ++i) d2 += (a[i] - b[i]) * (a[i] - b[i]);
  EXPECT_GT(std::sqrt(d2), 1e-6);
}

TEST(Vrae, PreprocessDropsWatchAndStrides) {
  VraeConfig cfg = small_config();
  cfg.max_seq_len = 4;
  std::vector<Event> ev;
  const E types[] = {E::Create, E::Watch, E::Push, E::Fork, E::Watch,
                     E::Issues, E::Delete, E::Release, E::Public};
  for (auto t : types) ev.push_back(repoprint::testing::make_event("a", t, "r", 0));
  // 7 non-Watch events subsampled at floor(i * 7 / 4) = 0, 1, 3, 5
  EXPECT_EQ(preprocess(ev, cfg),
            (std::vector<E>{E::Create, E::Push, E::Issues, E::Release}));
  cfg.include_watch = true;
  cfg.max_seq_len = 100;
  EXPECT_EQ(preprocess(ev, cfg).size(), 9u);
}

TEST(Trainer, KlWarmup) {
  TrainConfig cfg;
  cfg.epochs = 50;
  EXPECT_EQ(cfg.kl_weight(0), 0.0);
  EXPECT_DOUBLE_EQ(cfg.kl_weight(5), 0.5);
  EXPECT_EQ(cfg.kl_weight(10), 1.0);
  EXPECT_EQ(cfg.kl_weight(49), 1.0);
  cfg.kl_warmup_fraction = 0.0;
  EXPECT_EQ(cfg.kl_weight(0), 1.0);
  TrainConfig bad;
  bad.batch_size = 0;
  EXPECT_EQ(code_of([&] { bad.validate(); }), Errc::InvalidConfig);
}

TEST(Trainer, DeterministicAcrossThreadCounts) {
  TrainConfig cfg;
  cfg.latent_dim = 3;
  cfg.hidden_size = 6;
  cfg.epochs = 4;
  cfg.batch_size = 3;
  std::vector<std::vector<E>> seqs;
  for (std::uint64_t i = 0; i < 7; ++i) seqs.push_back(random_sequence(5 + i, i));
  auto a = train_sequences(cfg, seqs);
  cfg.threads = 3;
  auto b = train_sequences(cfg, seqs);
  EXPECT_EQ(format_training_log(a.curve), format_training_log(b.curve));
  EXPECT_EQ(a.model, b.model);
  ASSERT_EQ(a.curve.size(), 4u);
  EXPECT_EQ(format_training_log(a.curve).substr(0, 36), "epoch,mean_total,mean_recon,mean_kl\n");
}

TEST(Trainer, MemorizesASingleSequence) {
  TrainConfig cfg;
  cfg.latent_dim = 4;
  cfg.hidden_size = 16;
  cfg.epochs = 600;
  cfg.batch_size = 1;
  cfg.learning_rate = 1e-2;
  cfg.seed = 3;
  const std::vector<E> seq = {E::Create, E::Push, E::Push, E::Issues, E::Fork, E::Release};
  std::vector<std::vector<E>> seqs = {seq};
  auto result = train_sequences(cfg, seqs);
  EXPECT_LT(result.curve.back().mean_total, 0.5 * result.curve.front().mean_total);
  auto out = decode(result.model, embed(result.model, seq), seq.size());
  for (std::size_t t = 0; t < seq.size(); ++t) {
    std::size_t best = 0;
    for (std::size_t c = 1; c < kChannels; ++c) {
      if (out(t, c) > out(t, best)) best = c;
    }
    EXPECT_EQ(best, index_of(seq[t])) << "step " << t;
  }
}

TEST(Trainer, RejectsEmptyInput) {
  TrainConfig cfg;
  std::vector<TrainingSequence> only_watch = {
      {"r", {repoprint::testing::make_event("a", E::Watch, "r", 0)}}};
  EXPECT_EQ(code_of([&] { train(cfg, only_watch); }), Errc::EmptyTrainingSet);
}

TEST(Checkpoint, RoundTripsAndRejectsDamage) {
  auto cfg = small_config();
  cfg.include_watch = true;
  auto m = random_model(cfg, 21);
  auto bytes = serialize_model(m);
  auto back = deserialize_model(bytes);
  EXPECT_EQ(back, m);
  EXPECT_EQ(serialize_model(back), bytes);

  EXPECT_EQ(code_of([&] { deserialize_model(bytes.substr(0, bytes.size() / 2)); }),
            Errc::CorruptCheckpoint);
  EXPECT_EQ(code_of([&] { deserialize_model(bytes.substr(0, bytes.size() - 1)); }),
            Errc::CorruptCheckpoint);
  auto flipped = bytes;
  flipped[bytes.size() / 2] ^= 0x10;
  EXPECT_EQ(code_of([&] { deserialize_model(flipped); }), Errc::CorruptCheckpoint);
  auto magic = bytes;
  magic[0] = 'X';
  EXPECT_EQ(code_of([&] { deserialize_model(magic); }), Errc::CorruptCheckpoint);
  auto version = bytes;
  version[4] = 2;
  EXPECT_EQ(code_of([&] { deserialize_model(version); }), Errc::VersionMismatch);

  repoprint::testing::TempDir dir;
  save_model(m, dir.file("m.vrae"));
  EXPECT_EQ(load_model(dir.file("m.vrae")), m);
  EXPECT_EQ(code_of([&] { load_model(dir.file("missing.vrae")); }), Errc::IoError);
}
