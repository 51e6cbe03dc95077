/*
 * Copyright 2026 The vidlabel Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <set>

#include "support/fixtures.h"
#include "vidlabel/common/errors.h"
#include "vidlabel/dataio/folds.h"
#include "vidlabel/dataio/synthetic.h"
#include "vidlabel/evalens/metrics.h"
#include "vidlabel/features/feature_io.h"
#include "vidlabel/models/model.h"
#include "vidlabel/nncore/checkpoint.h"
#include "vidlabel/train/dataset.h"
#include "vidlabel/train/trainer.h"

namespace vidlabel::train {
namespace {

namespace fs = std::filesystem;
using testing::ReadText;
using testing::TempDir;

// One small featurized dataset shared by every test in the file.
class TrainTest : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    dir_ = new TempDir("train");
    dataio::SyntheticParams p;
    p.seed = 3;
    p.num_videos = 240;
    p.vocab_size = 8;
    p.rgb_dim = 6;
    p.audio_dim = 2;
    p.num_topics = 4;
    p.min_frames = 2;
    p.max_frames = 6;
    p.num_shards = 5;
    p.holdout_videos = 60;
    dataio::GenerateSynthetic(p, *dir_ / "raw");
    features::FeaturizeDataset(*dir_ / "raw", *dir_ / "feat", {});
    features::FeaturizeOptions holdout;
    holdout.augment = false;
    features::FeaturizeDataset(*dir_ / "raw" / "holdout", *dir_ / "feat_holdout", holdout);
  }
  static void TearDownTestSuite() {
    delete dir_;
    dir_ = nullptr;
  }

  static fs::path Data() { return *dir_ / "feat"; }
  static fs::path Holdout() { return *dir_ / "feat_holdout"; }

  TrainSession Session(const fs::path& out) const {
    TrainSession s;
    s.model.kind = models::ModelKind::kMonn;
    s.model.hidden = {16};
    s.model.num_experts = 2;
    s.config.learning_rate = 0.01;
    s.config.batch_size = 16;
    s.config.seed = 9;
    s.config.max_steps = 100;
    s.config.checkpoint_every = 50;
    s.config.eval_every = 25;
    s.num_folds = 5;
    s.fold_index = 1;
    s.data_dir = Data();
    s.out_dir = out;
    s.validation_subset = 30;
    return s;
  }

  static TempDir* dir_;
};

TempDir* TrainTest::dir_ = nullptr;

TEST_F(TrainTest, ZeroStepsWritesInitialCheckpoint) {
  TempDir out("run");
  TrainSession s = Session(out.path());
  s.config.max_steps = 0;
  const TrainResult r = RunTraining(s);
  ASSERT_EQ(r.checkpoints.size(), 1u);
  EXPECT_EQ(r.checkpoints[0], out / "ckpt_0");
  EXPECT_TRUE(r.log.empty());
  EXPECT_EQ(ReadText(out / kTrainLogFile), std::string(kTrainLogHeader) + "\n");
  EXPECT_EQ(nncore::LoadCheckpoint(out / "ckpt_0").step(), 0);
}

TEST_F(TrainTest, CheckpointScheduleAndLog) {
  TempDir out("run");
  const TrainResult r = RunTraining(Session(out.path()));
  ASSERT_EQ(r.checkpoints.size(), 2u);
  EXPECT_EQ(r.checkpoints[0], CheckpointDir(out.path(), 50));
  EXPECT_EQ(r.checkpoints[1], CheckpointDir(out.path(), 100));
  EXPECT_EQ(CheckpointDir(out.path(), 50), out / "ckpt_50");
  ASSERT_EQ(r.log.size(), 4u);
  for (std::size_t i = 0; i < 4; ++i) {
    EXPECT_EQ(r.log[i].step, static_cast<std::int64_t>(25 * (i + 1)));
    EXPECT_TRUE(std::isfinite(r.log[i].holdout_gap));
  }
  EXPECT_LT(r.log.back().train_loss, r.log.front().train_loss);
  EXPECT_EQ(ParseLog(ReadText(out / kTrainLogFile)).size(), 4u);
  // 100 steps of 16 over the four training shards.
  EXPECT_GT(r.epochs, 0.0);
}

TEST_F(TrainTest, ScheduleEndsAtMaxSteps) {
  TempDir out("run");
  TrainSession s = Session(out.path());
  s.config.max_steps = 70;
  s.config.checkpoint_every = 30;
  const TrainResult r = RunTraining(s);
  ASSERT_EQ(r.checkpoints.size(), 3u);
  EXPECT_EQ(r.checkpoints[2].filename(), "ckpt_70");
}

TEST_F(TrainTest, BatchesNeverTouchValidationShards) {
  TempDir out("run");
  TrainSession s = Session(out.path());
  const auto folds = dataio::AssignFolds(5, 5, s.fold_index);
  std::set<int> seen;
  RunTraining(s, [&](std::int64_t, const std::vector<int>& shards) {
    for (int shard : shards) {
      EXPECT_FALSE(folds.is_validation(shard)) << shard;
      seen.insert(shard);
    }
  });
  EXPECT_EQ(seen.size(), 4u);
}

TEST_F(TrainTest, RunsAreReproducible) {
  TempDir a("run");
  TempDir b("run");
  const TrainResult ra = RunTraining(Session(a.path()));
  const TrainResult rb = RunTraining(Session(b.path()));
  EXPECT_EQ(ra.params, rb.params);
  EXPECT_EQ(ReadText(a / kTrainLogFile), ReadText(b / kTrainLogFile));
  EXPECT_EQ(ReadText(a / "ckpt_100" / "params.bin"), ReadText(b / "ckpt_100" / "params.bin"));
  EXPECT_EQ(ReadText(a / "ckpt_100" / "manifest.json"),
            ReadText(b / "ckpt_100" / "manifest.json"));

  TempDir c("run");
  TrainSession other = Session(c.path());
  other.config.seed = 10;
  EXPECT_NE(RunTraining(other).params, ra.params);
}

TEST_F(TrainTest, CheckpointRestoresModel) {
  TempDir out("run");
  const TrainResult r = RunTraining(Session(out.path()));
  const auto ckpt = nncore::LoadCheckpoint(out / "ckpt_100");
  EXPECT_EQ(ckpt.step(), 100);
  EXPECT_EQ(ckpt.snapshot, r.params);

  const auto spec = models::SpecFromJson(ckpt.model_config);
  const auto model = models::BuildModel(spec);
  const Dataset holdout = LoadDataset(Holdout(), models::InputKind::kVideo);
  const auto expected =
      PredictItems(*model, r.params, holdout, VideoItems(holdout, AllShards(holdout)), 5);
  PredictOptions opts;
  opts.top_k = 5;
  const auto preds = Predict(out / "ckpt_100", Holdout(), opts);
  EXPECT_EQ(preds, expected);
  EXPECT_EQ(preds.tag, "ckpt_100");
  EXPECT_EQ(preds.videos.size(), 60u);
  for (const auto& [id, scores] : preds.videos) EXPECT_EQ(scores.size(), 5u);
}

TEST_F(TrainTest, EmaCheckpoints) {
  TempDir out("run");
  TrainSession s = Session(out.path());
  s.ema.enabled = true;
  s.ema.half_life = 20;
  const TrainResult r = RunTraining(s);
  ASSERT_TRUE(r.ema.has_value());
  EXPECT_NE(*r.ema, r.params);
  const auto ckpt = nncore::LoadCheckpoint(out / "ckpt_100");
  ASSERT_TRUE(ckpt.ema.has_value());
  EXPECT_EQ(*ckpt.ema, *r.ema);
  EXPECT_EQ(ckpt.ema_half_life, 20);
  PredictOptions opts;
  opts.use_ema = true;
  EXPECT_EQ(Predict(out / "ckpt_100", Holdout(), opts).tag, "ckpt_100_ema");

  // A late start leaves the shadow untouched until that step.
  TempDir late("run");
  s.out_dir = late.path();
  s.ema.start_step = 100;
  const TrainResult rl = RunTraining(s);
  ASSERT_TRUE(rl.ema.has_value());
  EXPECT_EQ(rl.ema->at("experts/W").values, rl.params.at("experts/W").values);
  EXPECT_FALSE(nncore::LoadCheckpoint(late / "ckpt_50").ema.has_value());
}

TEST_F(TrainTest, PredictRejectsMismatches) {
  TempDir out("run");
  TrainSession s = Session(out.path());
  s.config.max_steps = 0;
  RunTraining(s);
  PredictOptions opts;
  opts.use_ema = true;
  EXPECT_THROW(Predict(out / "ckpt_0", Holdout(), opts), SchemaError);
  opts.use_ema = false;
  models::ModelSpec other = s.model;
  other.hidden = {17};
  opts.expected_model = other;
  EXPECT_THROW(Predict(out / "ckpt_0", Holdout(), opts), SchemaError);
  opts.expected_model.reset();
  EXPECT_THROW(Predict(out / "ckpt_0", *dir_ / "raw" / "holdout", opts), Error);
}

TEST_F(TrainTest, UniformModelRanksLabelsInOrder) {
  TempDir out("run");
  models::ModelSpec spec;
  spec.kind = models::ModelKind::kLogistic;
  spec.vocab_size = 8;
  spec.input_dim = 8;
  nncore::Checkpoint ckpt;
  models::BuildModel(spec)->Declare(ckpt.snapshot);
  ckpt.model_config = models::SpecToJson(spec);
  nncore::SaveCheckpoint(out / "zero", ckpt);
  PredictOptions opts;
  opts.top_k = 3;
  const auto preds = Predict(out / "zero", Holdout(), opts);
  for (const auto& [id, scores] : preds.videos) {
    ASSERT_EQ(scores.size(), 3u);
    for (int k = 0; k < 3; ++k) {
      EXPECT_EQ(scores[k].label, k);
      EXPECT_EQ(scores[k].confidence, 0.5);
    }
  }
}

TEST_F(TrainTest, AllFoldsTrainIndependently) {
  TempDir out("run");
  TrainSession s = Session(out.path());
  s.config.max_steps = 20;
  s.config.checkpoint_every = 10;
  s.config.eval_every = 10;
  const auto outcomes = TrainAllFolds(s, 5, 2);
  ASSERT_EQ(outcomes.size(), 5u);
  std::set<int> validation;
  for (const auto& o : outcomes) {
    EXPECT_TRUE(o.error.empty()) << o.error;
    EXPECT_EQ(o.checkpoints.size(), 2u);
    EXPECT_TRUE(fs::exists(out / ("fold_" + std::to_string(o.fold)) / "ckpt_20"));
    for (int shard : dataio::AssignFolds(5, 5, o.fold).validation_shards()) {
      EXPECT_TRUE(validation.insert(shard).second) << "shard " << shard << " validated twice";
    }
  }
  EXPECT_EQ(validation.size(), 5u);
  EXPECT_NE(ReadText(out / "fold_0" / "ckpt_20" / "params.bin"),
            ReadText(out / "fold_1" / "ckpt_20" / "params.bin"));
  EXPECT_NE(FoldSeed(9, 0), FoldSeed(9, 1));

  // Thread count does not change the result.
  TempDir serial("run");
  s.out_dir = serial.path();
  TrainAllFolds(s, 5, 1);
  for (int f = 0; f < 5; ++f) {
    const std::string sub = "fold_" + std::to_string(f);
    EXPECT_EQ(ReadText(out / sub / "ckpt_20" / "params.bin"),
              ReadText(serial / sub / "ckpt_20" / "params.bin"));
  }
}

TEST_F(TrainTest, SingleFoldTrainsOnEverything) {
  TempDir out("run");
  TrainSession s = Session(out.path());
  s.num_folds = 1;
  s.fold_index = 0;
  s.config.max_steps = 60;
  std::set<int> seen;
  const TrainResult r = RunTraining(s, [&](std::int64_t, const std::vector<int>& shards) {
    seen.insert(shards.begin(), shards.end());
  });
  EXPECT_EQ(seen.size(), 5u);
  // Nothing held out, so nothing to evaluate.
  for (const auto& row : r.log) EXPECT_TRUE(std::isnan(row.holdout_gap));

  TempDir with_eval("run");
  s.out_dir = with_eval.path();
  s.eval_dir = Holdout();
  for (const auto& row : RunTraining(s).log) EXPECT_TRUE(std::isfinite(row.holdout_gap));
}

TEST_F(TrainTest, WrongDataKindIsConfigError) {
  TempDir out("run");
  TrainSession s = Session(out.path());
  s.data_dir = *dir_ / "raw";
  EXPECT_THROW(RunTraining(s), ConfigError);
}

TEST_F(TrainTest, ShuffledStreamCoversEpoch) {
  const Dataset data = LoadDataset(Data(), models::InputKind::kVideo);
  const std::vector<int> shards = {0, 2, 3};
  std::size_t total = 0;
  for (int s : shards) total += data.shard_size(s);
  for (std::size_t buffer : {std::size_t{1}, std::size_t{7}, std::size_t{4096}}) {
    ShuffledStream stream(data, shards, 5, buffer);
    std::set<std::pair<int, int>> seen;
    for (std::size_t i = 0; i < total; ++i) {
      const ItemRef it = stream.Next();
      EXPECT_NE(it.shard, 1);
      EXPECT_NE(it.shard, 4);
      seen.insert({it.shard, it.index});
    }
    EXPECT_EQ(seen.size(), total) << buffer;
    EXPECT_DOUBLE_EQ(stream.epochs(), 1.0);
  }
  ShuffledStream a(data, shards, 5);
  ShuffledStream b(data, shards, 5);
  ShuffledStream c(data, shards, 6);
  bool differs = false;
  for (int i = 0; i < 50; ++i) {
    const ItemRef x = a.Next();
    EXPECT_EQ(x, b.Next());
    differs |= !(x == c.Next());
  }
  EXPECT_TRUE(differs);
}

TEST(TrainConfigTest, LogRoundTrip) {
  std::vector<LogRow> rows = {{10, 0.5, 0.25}, {20, 1.0 / 3.0, std::nan("")}};
  const std::string text = EncodeLog(rows);
  EXPECT_EQ(text.substr(0, text.find('\n')), kTrainLogHeader);
  EXPECT_NE(text.find("20,0.33333333333333331,\n"), std::string::npos);
  const auto back = ParseLog(text);
  ASSERT_EQ(back.size(), 2u);
  EXPECT_EQ(back[1].train_loss, 1.0 / 3.0);
  EXPECT_TRUE(std::isnan(back[1].holdout_gap));
  EXPECT_EQ(back[0].holdout_gap, 0.25);
  EXPECT_THROW(ParseLog("wrong\n"), ParseError);
}

TEST(TrainConfigTest, ValidationAndJson) {
  TrainSession s;
  s.model.kind = models::ModelKind::kLogistic;
  s.data_dir = "d";
  s.out_dir = "o";
  s.config.max_steps = 10;
  s.config.checkpoint_every = 20;
  EXPECT_THROW(ValidateSession(s), ConfigError);
  s.config.checkpoint_every = 5;
  EXPECT_NO_THROW(ValidateSession(s));
  s.fold_index = 1;
  EXPECT_THROW(ValidateSession(s), ConfigError);

  const nlohmann::json j = {{"model", {{"kind", "logistic"}}},
                            {"train", {{"learning_rate", 0.1}, {"max_steps", 5},
                                       {"checkpoint_every", 5}}},
                            {"ema", {{"half_life", 10}}},
                            {"data", "d"},
                            {"out", "o"},
                            {"folds", 3},
                            {"fold", 2}};
  const TrainSession parsed = SessionFromJson(j, "/base");
  EXPECT_EQ(parsed.data_dir, fs::path("/base/d"));
  EXPECT_EQ(parsed.out_dir, fs::path("/base/o"));
  EXPECT_EQ(parsed.config.learning_rate, 0.1);
  EXPECT_TRUE(parsed.ema.enabled);
  EXPECT_EQ(parsed.ema.half_life, 10);
  EXPECT_EQ(parsed.num_folds, 3);
  EXPECT_EQ(SessionToJson(SessionFromJson(SessionToJson(parsed), "/elsewhere")),
            SessionToJson(parsed));
  nlohmann::json bad = j;
  bad["train"]["learning_rat"] = 1;
  EXPECT_THROW(SessionFromJson(bad, "/base"), ConfigError);
  bad = j;
  bad["extra"] = 1;
  EXPECT_THROW(SessionFromJson(bad, "/base"), ConfigError);
}

TEST(TrainConfigTest, ResolveSpec) {
  models::ModelSpec s;
  s.kind = models::ModelKind::kLogistic;
  const auto r = ResolveSpec(s, 10, 4);
  EXPECT_EQ(r.vocab_size, 10);
  EXPECT_EQ(r.input_dim, 4);
  s.vocab_size = 11;
  EXPECT_THROW(ResolveSpec(s, 10, 4), ConfigError);
}

}  // namespace
}  // namespace vidlabel::train
