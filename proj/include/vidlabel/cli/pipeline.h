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

#ifndef VIDLABEL_CLI_PIPELINE_H_
#define VIDLABEL_CLI_PIPELINE_H_

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "vidlabel/dataio/synthetic.h"
#include "vidlabel/features/feature_io.h"
#include "vidlabel/models/model_spec.h"
#include "vidlabel/nncore/optimizer.h"
#include "vidlabel/train/trainer.h"

namespace vidlabel::cli {

inline constexpr char kReportFile[] = "report.json";

// Declarative description of a full run: data, features, per-fold training,
// prediction on the holdout set, ensembling and scoring.
struct PipelineConfig {
  std::filesystem::path work_dir;
  // Either generate data into work_dir/data or read an existing frame dataset.
  std::optional<dataio::SyntheticParams> synth;
  std::optional<std::filesystem::path> data;
  // Defaults to <data>/holdout.
  std::optional<std::filesystem::path> holdout;
  features::FeaturizeOptions featurize;
  models::ModelSpec model;
  nncore::TrainConfig train;
  train::EmaSettings ema;
  int folds = 5;
  int checkpoints_per_fold = 2;
  bool predict_with_ema = true;
  int top_k = 20;
  int correlation_k = 20;
  int validation_subset = 1000;
  // Stage inputs also include this file, so editing it reruns everything.
  std::optional<std::filesystem::path> config_file;
};

// Strict schema check; relative paths resolve against `base_dir`. Every
// problem is reported before any stage runs.
PipelineConfig PipelineConfigFromJson(const nlohmann::json& j, const std::filesystem::path& base_dir);
PipelineConfig LoadPipelineConfig(const std::filesystem::path& path);

struct PipelineResult {
  nlohmann::ordered_json report;
  std::vector<std::string> stages_run;
  std::vector<std::string> stages_skipped;
};

// Steps at which each fold's retained checkpoints are taken.
std::vector<std::int64_t> RetainedSteps(const nncore::TrainConfig& config, int count);

// Runs every stage whose outputs are missing or older than its inputs and
// writes work_dir/report.json. Progress goes to `log`.
PipelineResult RunPipeline(const PipelineConfig& config, int threads, std::ostream& log);

}  // namespace vidlabel::cli

#endif  // VIDLABEL_CLI_PIPELINE_H_
