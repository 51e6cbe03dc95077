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

#ifndef VIDLABEL_TRAIN_TRAINER_H_
#define VIDLABEL_TRAIN_TRAINER_H_

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "vidlabel/evalens/predictions.h"
#include "vidlabel/models/model_spec.h"
#include "vidlabel/nncore/optimizer.h"
#include "vidlabel/nncore/parameter_store.h"

namespace vidlabel::train {

inline constexpr char kTrainLogFile[] = "train_log.csv";
inline constexpr char kTrainLogHeader[] = "step,train_loss,holdout_gap";

struct EmaSettings {
  bool enabled = false;
  double half_life = 3000.0;
  // The shadow starts as a copy of the weights at this step. Zero tracks the
  // whole run; a later step averages only the continuation of training.
  std::int64_t start_step = 0;
};

struct TrainSession {
  models::ModelSpec model;
  nncore::TrainConfig config;
  int num_folds = 1;
  int fold_index = 0;
  EmaSettings ema;
  std::filesystem::path data_dir;
  std::filesystem::path out_dir;
  // Videos scored at every evaluation, drawn from the validation shards.
  int validation_subset = 1000;
  // Optional separate dataset to draw the evaluation subset from instead.
  std::optional<std::filesystem::path> eval_dir;
  int eval_top_k = 20;
};

// Throws ConfigError, e.g. when checkpoint_every exceeds max_steps.
void ValidateSession(const TrainSession& session);

nlohmann::ordered_json TrainConfigToJson(const nncore::TrainConfig& config);
// Strict: unknown keys are rejected; missing keys keep their defaults.
nncore::TrainConfig TrainConfigFromJson(const nlohmann::json& j, nncore::TrainConfig base = {});
nlohmann::ordered_json EmaToJson(const EmaSettings& ema);
EmaSettings EmaFromJson(const nlohmann::json& j);

// {"model", "train", "ema", "data", "out", "folds", "fold", "validation_subset",
//  "eval_data", "top_k"}; relative paths resolve against `base_dir`.
TrainSession SessionFromJson(const nlohmann::json& j, const std::filesystem::path& base_dir);
nlohmann::ordered_json SessionToJson(const TrainSession& session);

struct LogRow {
  std::int64_t step = 0;
  double train_loss = 0.0;   // mean over the steps since the previous row
  double holdout_gap = 0.0;  // NaN when there is nothing to evaluate on
};

std::string EncodeLog(const std::vector<LogRow>& rows);
std::vector<LogRow> ParseLog(const std::string& text);

struct TrainResult {
  std::vector<std::filesystem::path> checkpoints;
  std::vector<LogRow> log;
  double epochs = 0.0;
  nncore::ParameterStore params;
  std::optional<nncore::ParameterStore> ema;
};

// Called with the shard of every item in a batch before the step runs.
using BatchObserver = std::function<void(std::int64_t step, const std::vector<int>& shards)>;

// Trains on the train-role shards, logging every eval_every steps to
// out_dir/train_log.csv and writing out_dir/ckpt_<step> every
// checkpoint_every steps and at max_steps (ckpt_0 when max_steps is 0).
TrainResult RunTraining(const TrainSession& session, const BatchObserver& observer = {});

std::filesystem::path CheckpointDir(const std::filesystem::path& out_dir, std::int64_t step);

struct FoldOutcome {
  int fold = 0;
  std::vector<std::filesystem::path> checkpoints;
  std::string error;  // empty on success
};

// One independent session per fold under out_dir/fold_<f>, each with a
// fold-specific seed. A failing fold is reported without stopping the others.
std::vector<FoldOutcome> TrainAllFolds(const TrainSession& base, int num_folds, int threads = 1);

std::uint64_t FoldSeed(std::uint64_t seed, int fold);

struct PredictOptions {
  bool use_ema = false;
  int top_k = 20;
  // When set, the checkpoint's model must match it.
  std::optional<models::ModelSpec> expected_model;
};

// Top-k predictions of every video in `data_dir` (whole-video rows only for
// featurized data).
evalens::PredictionSet Predict(const std::filesystem::path& checkpoint,
                               const std::filesystem::path& data_dir,
                               const PredictOptions& options);

// Fills vocabulary size and input width from the data; conflicting non-zero
// values are a ConfigError.
models::ModelSpec ResolveSpec(models::ModelSpec spec, int vocab_size, int input_dim);

}  // namespace vidlabel::train

#endif  // VIDLABEL_TRAIN_TRAINER_H_
