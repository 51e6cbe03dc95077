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

#include "vidlabel/cli/pipeline.h"

#include <algorithm>
#include <functional>

#include "vidlabel/cli/config.h"
#include "vidlabel/common/errors.h"
#include "vidlabel/common/fs.h"
#include "vidlabel/dataio/manifest.h"
#include "vidlabel/dataio/synthetic.h"
#include "vidlabel/evalens/baseline.h"
#include "vidlabel/evalens/ensemble.h"
#include "vidlabel/evalens/metrics.h"

namespace vidlabel::cli {

namespace fs = std::filesystem;
using nlohmann::json;
using nlohmann::ordered_json;

namespace {

fs::path Resolve(const fs::path& base, const std::string& p) {
  fs::path path = p;
  return path.is_relative() ? base / path : path;
}

// Newest modification time below `p`; nullopt when `p` does not exist.
std::optional<fs::file_time_type> Newest(const fs::path& p) {
  std::error_code ec;
  if (!fs::exists(p, ec)) return std::nullopt;
  auto t = fs::last_write_time(p);
  if (fs::is_directory(p)) {
    for (const auto& e : fs::recursive_directory_iterator(p)) {
      if (e.is_regular_file()) t = std::max(t, e.last_write_time());
    }
  }
  return t;
}

// Oldest file modification time below `p`.
std::optional<fs::file_time_type> Oldest(const fs::path& p) {
  std::error_code ec;
  if (!fs::exists(p, ec)) return std::nullopt;
  if (!fs::is_directory(p)) return fs::last_write_time(p);
  std::optional<fs::file_time_type> t;
  for (const auto& e : fs::recursive_directory_iterator(p)) {
    if (!e.is_regular_file()) continue;
    t = t ? std::min(*t, e.last_write_time()) : e.last_write_time();
  }
  return t;
}

bool UpToDate(const std::vector<fs::path>& inputs, const std::vector<fs::path>& outputs) {
  std::optional<fs::file_time_type> newest_in;
  for (const auto& in : inputs) {
    const auto t = Newest(in);
    if (!t) return false;
    newest_in = newest_in ? std::max(*newest_in, *t) : *t;
  }
  for (const auto& out : outputs) {
    const auto t = Oldest(out);
    if (!t) return false;
    if (newest_in && *t < *newest_in) return false;
  }
  return true;
}

double Median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace

PipelineConfig PipelineConfigFromJson(const json& j, const fs::path& base_dir) {
  RequireKnownKeys(j,
                   {"work_dir", "synth", "data", "holdout", "featurize", "model", "train", "ema",
                    "folds", "checkpoints_per_fold", "predict_with_ema", "top_k", "correlation_k",
                    "validation_subset"},
                   "pipeline");
  PipelineConfig c;
  try {
    if (!j.contains("work_dir")) throw ConfigError("pipeline: missing required path 'work_dir'");
    c.work_dir = Resolve(base_dir, j.at("work_dir").get<std::string>());
    if (j.contains("synth")) c.synth = SyntheticParamsFromJson(j.at("synth"));
    if (j.contains("data")) c.data = Resolve(base_dir, j.at("data").get<std::string>());
    if (c.synth && c.data) throw ConfigError("pipeline: give either 'synth' or 'data', not both");
    if (!c.synth && !c.data) throw ConfigError("pipeline: missing required path 'data' (or a 'synth' section)");
    if (j.contains("holdout")) c.holdout = Resolve(base_dir, j.at("holdout").get<std::string>());
    if (c.synth && !c.holdout && c.synth->holdout_videos == 0) {
      throw ConfigError("pipeline: synth.holdout must be > 0 to score predictions");
    }
    if (j.contains("featurize")) c.featurize = FeaturizeOptionsFromJson(j.at("featurize"));
    if (!j.contains("model")) throw ConfigError("pipeline: missing 'model'");
    c.model = models::SpecFromJson(j.at("model"));
    if (!c.model.base_checkpoint.empty()) {
      c.model.base_checkpoint = Resolve(base_dir, c.model.base_checkpoint).string();
    }
    if (j.contains("train")) c.train = train::TrainConfigFromJson(j.at("train"));
    if (j.contains("ema")) c.ema = train::EmaFromJson(j.at("ema"));
    c.folds = j.value("folds", c.folds);
    c.checkpoints_per_fold = j.value("checkpoints_per_fold", c.checkpoints_per_fold);
    c.predict_with_ema = j.value("predict_with_ema", c.ema.enabled);
    c.top_k = j.value("top_k", c.top_k);
    c.correlation_k = j.value("correlation_k", c.correlation_k);
    c.validation_subset = j.value("validation_subset", c.validation_subset);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("pipeline: ") + e.what());
  }
  if (c.synth) dataio::ValidateSyntheticParams(*c.synth);
  if (c.data && !fs::exists(*c.data / dataio::kManifestFile)) {
    throw ConfigError("pipeline: no dataset manifest in " + c.data->string());
  }
  if (c.data) {
    const fs::path holdout = c.holdout ? *c.holdout : *c.data / "holdout";
    if (!fs::exists(holdout / dataio::kManifestFile)) {
      throw ConfigError("pipeline: no holdout manifest in " + holdout.string());
    }
  }
  if (c.folds < 1) throw ConfigError("pipeline: folds must be >= 1");
  if (c.checkpoints_per_fold < 1) throw ConfigError("pipeline: checkpoints_per_fold must be >= 1");
  if (c.top_k < 1 || c.correlation_k < 1) throw ConfigError("pipeline: top_k and correlation_k must be >= 1");
  if (c.predict_with_ema && !c.ema.enabled) {
    throw ConfigError("pipeline: predict_with_ema needs an enabled 'ema' section");
  }
  if (c.train.max_steps < 1) throw ConfigError("pipeline: train.max_steps must be >= 1");
  if (c.train.checkpoint_every > c.train.max_steps) {
    throw ConfigError("pipeline: checkpoint_every must not exceed max_steps");
  }
  if (RetainedSteps(c.train, c.checkpoints_per_fold).size() <
      static_cast<std::size_t>(c.checkpoints_per_fold)) {
    throw ConfigError("pipeline: the schedule writes fewer checkpoints than checkpoints_per_fold");
  }
  return c;
}

PipelineConfig LoadPipelineConfig(const fs::path& path) {
  PipelineConfig c = PipelineConfigFromJson(LoadJsonFile(path), path.parent_path());
  c.config_file = path;
  return c;
}

std::vector<std::int64_t> RetainedSteps(const nncore::TrainConfig& config, int count) {
  std::vector<std::int64_t> steps;
  for (std::int64_t s = config.checkpoint_every; s <= config.max_steps; s += config.checkpoint_every) {
    steps.push_back(s);
  }
  if (steps.empty() || steps.back() != config.max_steps) steps.push_back(config.max_steps);
  if (steps.size() > static_cast<std::size_t>(count)) {
    steps.erase(steps.begin(), steps.end() - count);
  }
  return steps;
}

PipelineResult RunPipeline(const PipelineConfig& c, int threads, std::ostream& log) {
  PipelineResult result;
  const fs::path& work = c.work_dir;
  fs::create_directories(work);
  std::vector<fs::path> config_inputs;
  if (c.config_file) config_inputs.push_back(*c.config_file);

  auto stage = [&](const std::string& name, const std::vector<fs::path>& inputs,
                   const std::vector<fs::path>& outputs, const std::function<void()>& body) {
    if (UpToDate(inputs, outputs)) {
      log << "stage " << name << ": up to date\n";
      result.stages_skipped.push_back(name);
      return;
    }
    log << "stage " << name << ": running\n";
    try {
      body();
    } catch (const std::exception& e) {
      throw Error("stage '" + name + "' failed: " + e.what());
    }
    result.stages_run.push_back(name);
  };

  // Raw data.
  const fs::path raw = c.data ? *c.data : work / "data";
  const fs::path raw_holdout = c.holdout ? *c.holdout : raw / "holdout";
  if (c.synth) {
    stage("synth", config_inputs, {raw / dataio::kManifestFile, raw_holdout / dataio::kManifestFile},
          [&] { dataio::GenerateSynthetic(*c.synth, raw); });
  }

  // Features. Holdout rows reuse the training moments.
  const bool frame_model = c.model.kind == models::ModelKind::kBiRnn;
  fs::path train_data = raw;
  fs::path eval_data = raw_holdout;
  if (!frame_model) {
    train_data = work / "features" / "train";
    eval_data = work / "features" / "holdout";
    std::vector<fs::path> inputs = config_inputs;
    inputs.push_back(raw);
    inputs.push_back(raw_holdout);
    stage("featurize", inputs, {train_data, eval_data}, [&] {
      fs::remove_all(train_data);
      fs::remove_all(eval_data);
      features::FeaturizeDataset(raw, train_data, c.featurize);
      features::FeaturizeOptions held = c.featurize;
      held.augment = false;
      if (held.mode != features::NormalizeMode::kOff) held.moments_in = train_data / features::kMomentsFile;
      features::FeaturizeDataset(raw_holdout, eval_data, held);
    });
  }

  // Training, one stage per fold.
  const std::vector<std::int64_t> steps = RetainedSteps(c.train, c.checkpoints_per_fold);
  train::TrainSession session;
  session.model = c.model;
  session.config = c.train;
  session.ema = c.ema;
  session.data_dir = train_data;
  session.out_dir = work / "runs";
  session.validation_subset = c.validation_subset;
  session.eval_top_k = c.top_k;
  {
    std::vector<int> pending;
    for (int f = 0; f < c.folds; ++f) {
      const fs::path fold_dir = session.out_dir / ("fold_" + std::to_string(f));
      std::vector<fs::path> outputs = {fold_dir / train::kTrainLogFile};
      for (auto s : steps) outputs.push_back(train::CheckpointDir(fold_dir, s));
      std::vector<fs::path> inputs = config_inputs;
      inputs.push_back(train_data);
      if (!c.model.base_checkpoint.empty()) inputs.push_back(c.model.base_checkpoint);
      const std::string name = "train_fold_" + std::to_string(f);
      if (UpToDate(inputs, outputs)) {
        log << "stage " << name << ": up to date\n";
        result.stages_skipped.push_back(name);
      } else {
        pending.push_back(f);
      }
    }
    if (!pending.empty()) {
      for (int f : pending) log << "stage train_fold_" << f << ": running\n";
      std::vector<train::FoldOutcome> outcomes(pending.size());
      // Folds are independent; run them through TrainAllFolds' worker pool
      // only when all folds are pending, otherwise one by one.
      if (static_cast<int>(pending.size()) == c.folds) {
        outcomes = train::TrainAllFolds(session, c.folds, threads);
      } else {
        for (std::size_t i = 0; i < pending.size(); ++i) {
          train::TrainSession s = session;
          s.num_folds = c.folds;
          s.fold_index = pending[i];
          s.config.seed = train::FoldSeed(c.train.seed, pending[i]);
          s.out_dir = session.out_dir / ("fold_" + std::to_string(pending[i]));
          outcomes[i].fold = pending[i];
          try {
            outcomes[i].checkpoints = train::RunTraining(s).checkpoints;
          } catch (const std::exception& e) {
            outcomes[i].error = e.what();
          }
        }
      }
      for (const auto& o : outcomes) {
        if (!o.error.empty()) {
          throw Error("stage 'train_fold_" + std::to_string(o.fold) + "' failed: " + o.error);
        }
        result.stages_run.push_back("train_fold_" + std::to_string(o.fold));
      }
    }
  }

  // Predictions on the holdout set.
  const fs::path preds_dir = work / "preds";
  struct Single {
    int fold;
    std::int64_t step;
    fs::path file;
  };
  std::vector<Single> singles;
  for (int f = 0; f < c.folds; ++f) {
    for (auto s : steps) {
      const fs::path ckpt = train::CheckpointDir(session.out_dir / ("fold_" + std::to_string(f)), s);
      const fs::path file = preds_dir / ("fold" + std::to_string(f) + "_ckpt" + std::to_string(s) + ".csv");
      singles.push_back({f, s, file});
      stage("predict_fold" + std::to_string(f) + "_ckpt" + std::to_string(s), {ckpt, eval_data},
            {file}, [&] {
              train::PredictOptions opts;
              opts.use_ema = c.predict_with_ema;
              opts.top_k = c.top_k;
              evalens::WritePredictions(file, train::Predict(ckpt, eval_data, opts));
            });
    }
  }

  // Equal-weight ensemble of every retained checkpoint.
  const fs::path ensemble_file = preds_dir / "ensemble.csv";
  std::vector<fs::path> single_files;
  for (const auto& s : singles) single_files.push_back(s.file);
  stage("ensemble", single_files, {ensemble_file}, [&] {
    std::vector<evalens::PredictionSet> members;
    for (const auto& f : single_files) members.push_back(evalens::ReadPredictions(f));
    const auto ens = evalens::Ensemble(members, std::vector<double>(members.size(), 1.0), c.top_k);
    evalens::WritePredictions(ensemble_file, ens.predictions);
  });

  // Scores and the report.
  const fs::path report_file = work / kReportFile;
  std::vector<fs::path> report_inputs = single_files;
  report_inputs.push_back(ensemble_file);
  report_inputs.push_back(eval_data / "truth.jsonl");
  report_inputs.push_back(train_data / "truth.jsonl");
  stage("report", report_inputs, {report_file}, [&] {
    const auto truth = evalens::ReadGroundTruth(eval_data / "truth.jsonl");
    const auto train_truth = evalens::ReadGroundTruth(train_data / "truth.jsonl");
    const int vocab = dataio::LoadManifest(eval_data).vocab_size;
    ordered_json report;
    report["baseline_gap"] = evalens::Gap(
        evalens::FrequencyBaseline(evalens::LabelFrequencies(train_truth, vocab), truth, c.top_k),
        truth);
    report["checkpoints"] = ordered_json::array();
    std::vector<double> gaps;
    std::vector<evalens::PredictionSet> sets;
    ordered_json files = ordered_json::array();
    for (const auto& s : singles) {
      sets.push_back(evalens::ReadPredictions(s.file));
      const double g = evalens::Gap(sets.back(), truth);
      gaps.push_back(g);
      const std::string rel = fs::relative(s.file, work).generic_string();
      files.push_back(rel);
      report["checkpoints"].push_back({{"fold", s.fold}, {"step", s.step}, {"file", rel}, {"gap", g}});
    }
    report["median_single_gap"] = Median(gaps);
    report["ensemble_gap"] = evalens::Gap(evalens::ReadPredictions(ensemble_file), truth);
    report["ensemble_gain"] = report["ensemble_gap"].get<double>() - Median(gaps);
    if (sets.size() >= 2) {
      report["correlation"] = {{"k", c.correlation_k},
                               {"files", files},
                               {"matrix", evalens::CorrelationMatrix(sets, c.correlation_k)}};
    }
    WriteFileAtomic(report_file, report.dump(2) + "\n");
  });
  result.report = ordered_json::parse(ReadFile(report_file));
  return result;
}

}  // namespace vidlabel::cli
