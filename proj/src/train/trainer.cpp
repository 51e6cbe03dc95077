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

#include "vidlabel/train/trainer.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <limits>
#include <mutex>
#include <sstream>
#include <thread>

#include "vidlabel/common/errors.h"
#include "vidlabel/common/fs.h"
#include "vidlabel/common/random.h"
#include "vidlabel/dataio/folds.h"
#include "vidlabel/evalens/metrics.h"
#include "vidlabel/models/model.h"
#include "vidlabel/nncore/checkpoint.h"
#include "vidlabel/nncore/ema.h"
#include "vidlabel/train/dataset.h"

namespace vidlabel::train {

namespace fs = std::filesystem;
using nlohmann::json;
using nlohmann::ordered_json;

namespace {

void RejectUnknown(const json& j, std::initializer_list<const char*> keys, const char* what) {
  if (!j.is_object()) throw ConfigError(std::string(what) + " must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (std::none_of(keys.begin(), keys.end(), [&](const char* k) { return key == k; })) {
      throw ConfigError(std::string(what) + ": unknown key '" + key + "'");
    }
  }
}

fs::path Resolve(const fs::path& base, const std::string& p) {
  fs::path path = p;
  return path.is_relative() ? base / path : path;
}

void ResolveBasePaths(models::ModelSpec& spec, const fs::path& base_dir) {
  if (!spec.base_checkpoint.empty()) spec.base_checkpoint = Resolve(base_dir, spec.base_checkpoint).string();
}

}  // namespace

void ValidateSession(const TrainSession& s) {
  nncore::ValidateTrainConfig(s.config);
  if (s.config.max_steps > 0 && s.config.checkpoint_every > s.config.max_steps) {
    throw ConfigError("checkpoint_every must not exceed max_steps");
  }
  if (s.num_folds < 1 || s.fold_index < 0 || s.fold_index >= s.num_folds) {
    throw ConfigError("fold index must lie in [0, folds)");
  }
  if (s.ema.enabled && !(s.ema.half_life > 0.0)) throw ConfigError("ema half_life must be > 0");
  if (s.ema.start_step < 0) throw ConfigError("ema start_step must be >= 0");
  if (s.validation_subset < 0) throw ConfigError("validation_subset must be >= 0");
  if (s.eval_top_k < 1) throw ConfigError("top_k must be >= 1");
  if (s.data_dir.empty()) throw ConfigError("training needs a data directory");
  if (s.out_dir.empty()) throw ConfigError("training needs an output directory");
}

ordered_json TrainConfigToJson(const nncore::TrainConfig& c) {
  ordered_json j;
  j["learning_rate"] = c.learning_rate;
  j["batch_size"] = c.batch_size;
  j["seed"] = c.seed;
  j["max_steps"] = c.max_steps;
  j["checkpoint_every"] = c.checkpoint_every;
  j["eval_every"] = c.eval_every;
  j["lr_decay_rate"] = c.lr_decay_rate;
  j["lr_decay_steps"] = c.lr_decay_steps;
  j["adam_beta1"] = c.adam_beta1;
  j["adam_beta2"] = c.adam_beta2;
  j["adam_epsilon"] = c.adam_epsilon;
  return j;
}

nncore::TrainConfig TrainConfigFromJson(const json& j, nncore::TrainConfig c) {
  RejectUnknown(j,
                {"learning_rate", "batch_size", "seed", "max_steps", "checkpoint_every",
                 "eval_every", "lr_decay_rate", "lr_decay_steps", "adam_beta1", "adam_beta2",
                 "adam_epsilon"},
                "train");
  try {
    c.learning_rate = j.value("learning_rate", c.learning_rate);
    c.batch_size = j.value("batch_size", c.batch_size);
    c.seed = j.value("seed", c.seed);
    c.max_steps = j.value("max_steps", c.max_steps);
    c.checkpoint_every = j.value("checkpoint_every", c.checkpoint_every);
    c.eval_every = j.value("eval_every", c.eval_every);
    c.lr_decay_rate = j.value("lr_decay_rate", c.lr_decay_rate);
    c.lr_decay_steps = j.value("lr_decay_steps", c.lr_decay_steps);
    c.adam_beta1 = j.value("adam_beta1", c.adam_beta1);
    c.adam_beta2 = j.value("adam_beta2", c.adam_beta2);
    c.adam_epsilon = j.value("adam_epsilon", c.adam_epsilon);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("train: ") + e.what());
  }
  nncore::ValidateTrainConfig(c);
  return c;
}

ordered_json EmaToJson(const EmaSettings& e) {
  return {{"enabled", e.enabled}, {"half_life", e.half_life}, {"start_step", e.start_step}};
}

EmaSettings EmaFromJson(const json& j) {
  RejectUnknown(j, {"enabled", "half_life", "start_step"}, "ema");
  EmaSettings e;
  try {
    e.enabled = j.value("enabled", true);
    e.half_life = j.value("half_life", e.half_life);
    e.start_step = j.value("start_step", e.start_step);
  } catch (const json::exception& ex) {
    throw ConfigError(std::string("ema: ") + ex.what());
  }
  if (!(e.half_life > 0.0)) throw ConfigError("ema half_life must be > 0");
  return e;
}

TrainSession SessionFromJson(const json& j, const fs::path& base_dir) {
  RejectUnknown(j,
                {"model", "train", "ema", "data", "out", "folds", "fold", "validation_subset",
                 "eval_data", "top_k"},
                "session");
  TrainSession s;
  try {
    if (!j.contains("model")) throw ConfigError("session: missing 'model'");
    s.model = models::SpecFromJson(j.at("model"));
    ResolveBasePaths(s.model, base_dir);
    if (j.contains("train")) s.config = TrainConfigFromJson(j.at("train"));
    if (j.contains("ema")) s.ema = EmaFromJson(j.at("ema"));
    if (j.contains("data")) s.data_dir = Resolve(base_dir, j.at("data").get<std::string>());
    if (j.contains("out")) s.out_dir = Resolve(base_dir, j.at("out").get<std::string>());
    if (j.contains("eval_data")) s.eval_dir = Resolve(base_dir, j.at("eval_data").get<std::string>());
    s.num_folds = j.value("folds", s.num_folds);
    s.fold_index = j.value("fold", s.fold_index);
    s.validation_subset = j.value("validation_subset", s.validation_subset);
    s.eval_top_k = j.value("top_k", s.eval_top_k);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("session: ") + e.what());
  }
  return s;
}

ordered_json SessionToJson(const TrainSession& s) {
  ordered_json j;
  j["model"] = models::SpecToJson(s.model);
  j["train"] = TrainConfigToJson(s.config);
  j["ema"] = EmaToJson(s.ema);
  j["data"] = s.data_dir.string();
  j["out"] = s.out_dir.string();
  j["folds"] = s.num_folds;
  j["fold"] = s.fold_index;
  j["validation_subset"] = s.validation_subset;
  if (s.eval_dir) j["eval_data"] = s.eval_dir->string();
  j["top_k"] = s.eval_top_k;
  return j;
}

std::string EncodeLog(const std::vector<LogRow>& rows) {
  std::string out = std::string(kTrainLogHeader) + "\n";
  char buf[128];
  for (const auto& r : rows) {
    if (std::isnan(r.holdout_gap)) {
      std::snprintf(buf, sizeof(buf), "%lld,%.17g,\n", static_cast<long long>(r.step), r.train_loss);
    } else {
      std::snprintf(buf, sizeof(buf), "%lld,%.17g,%.17g\n", static_cast<long long>(r.step),
                    r.train_loss, r.holdout_gap);
    }
    out += buf;
  }
  return out;
}

std::vector<LogRow> ParseLog(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != kTrainLogHeader) throw ParseError("training log: bad header");
  std::vector<LogRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    LogRow r;
    const auto c1 = line.find(',');
    const auto c2 = line.find(',', c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos) throw ParseError("training log: bad row '" + line + "'");
    try {
      r.step = std::stoll(line.substr(0, c1));
      r.train_loss = std::stod(line.substr(c1 + 1, c2 - c1 - 1));
      const std::string gap = line.substr(c2 + 1);
      r.holdout_gap = gap.empty() ? std::numeric_limits<double>::quiet_NaN() : std::stod(gap);
    } catch (const std::logic_error&) {
      throw ParseError("training log: bad row '" + line + "'");
    }
    rows.push_back(r);
  }
  return rows;
}

fs::path CheckpointDir(const fs::path& out_dir, std::int64_t step) {
  return out_dir / ("ckpt_" + std::to_string(step));
}

models::ModelSpec ResolveSpec(models::ModelSpec spec, int vocab_size, int input_dim) {
  if (spec.vocab_size == 0) spec.vocab_size = vocab_size;
  if (spec.input_dim == 0) spec.input_dim = input_dim;
  if (spec.vocab_size != vocab_size || spec.input_dim != input_dim) {
    throw ConfigError("model expects V=" + std::to_string(spec.vocab_size) + ", D=" +
                      std::to_string(spec.input_dim) + " but the data has V=" +
                      std::to_string(vocab_size) + ", D=" + std::to_string(input_dim));
  }
  if (spec.base) {
    spec.base = std::make_shared<models::ModelSpec>(ResolveSpec(*spec.base, vocab_size, input_dim));
  }
  models::ValidateSpec(spec);
  return spec;
}

namespace {

void SaveTrainingCheckpoint(const fs::path& dir, const models::ModelSpec& spec,
                            const nncore::ParameterStore& params,
                            const std::optional<nncore::EmaState>& ema) {
  nncore::Checkpoint ckpt;
  ckpt.snapshot = params;
  if (ema) {
    ckpt.ema = ema->shadow;
    ckpt.ema_half_life = ema->half_life;
  }
  ckpt.model_config = models::SpecToJson(spec);
  nncore::SaveCheckpoint(dir, ckpt);
}

models::InputKind KindOf(const models::ModelSpec& spec) {
  return spec.kind == models::ModelKind::kBiRnn ? models::InputKind::kFrame : models::InputKind::kVideo;
}

}  // namespace

TrainResult RunTraining(const TrainSession& session, const BatchObserver& observer) {
  ValidateSession(session);
  const nncore::TrainConfig& cfg = session.config;
  const models::InputKind kind = KindOf(session.model);
  const Dataset data = LoadDataset(session.data_dir, kind);
  const models::ModelSpec spec =
      ResolveSpec(session.model, data.manifest.vocab_size, data.input_dim());
  const auto model = models::BuildModel(spec);
  const dataio::FoldSpec folds =
      dataio::AssignFolds(data.num_shards(), session.num_folds, session.fold_index);

  // Evaluation subset.
  std::optional<Dataset> eval_owned;
  if (session.eval_dir) eval_owned = LoadDataset(*session.eval_dir, kind);
  const Dataset& eval_data = eval_owned ? *eval_owned : data;
  std::vector<ItemRef> eval_items =
      VideoItems(eval_data, eval_owned ? AllShards(eval_data) : folds.validation_shards());
  if (eval_items.size() > static_cast<std::size_t>(session.validation_subset)) {
    Rng rng(DeriveSeed(cfg.seed, "validation"));
    for (std::size_t i = 0; i < static_cast<std::size_t>(session.validation_subset); ++i) {
      std::swap(eval_items[i], eval_items[i + UniformIndex(rng, eval_items.size() - i)]);
    }
    eval_items.resize(static_cast<std::size_t>(session.validation_subset));
    std::sort(eval_items.begin(), eval_items.end(), [](const ItemRef& a, const ItemRef& b) {
      return a.shard != b.shard ? a.shard < b.shard : a.index < b.index;
    });
  }
  const evalens::GroundTruth eval_truth = TruthOf(eval_data, eval_items);

  TrainResult result;
  result.params = model->Initialize(DeriveSeed(cfg.seed, "init"));
  nncore::ParameterStore& params = result.params;
  std::optional<nncore::EmaState> ema;
  if (session.ema.enabled && session.ema.start_step == 0) {
    ema = nncore::StartEma(params, session.ema.half_life);
  }
  fs::create_directories(session.out_dir);
  const fs::path log_path = session.out_dir / kTrainLogFile;
  WriteFileAtomic(log_path, EncodeLog(result.log));

  if (cfg.max_steps == 0) {
    const fs::path dir = CheckpointDir(session.out_dir, 0);
    SaveTrainingCheckpoint(dir, spec, params, ema);
    result.checkpoints.push_back(dir);
    if (ema) result.ema = ema->shadow;
    return result;
  }

  ShuffledStream stream(data, folds.train_shards(), DeriveSeed(cfg.seed, "shuffle"));
  nncore::AdamState adam = nncore::AdamState::For(params);
  nncore::ParameterStore grads = params.ZerosLike();
  double loss_sum = 0.0;
  int loss_count = 0;
  std::vector<ItemRef> items(static_cast<std::size_t>(cfg.batch_size));
  std::vector<int> shards(items.size());
  for (std::int64_t step = 1; step <= cfg.max_steps; ++step) {
    for (std::size_t i = 0; i < items.size(); ++i) {
      items[i] = stream.Next();
      shards[i] = items[i].shard;
    }
    if (observer) observer(step, shards);
    const models::Batch batch = MakeBatch(data, items);
    grads.SetZero();
    const double loss = model->LossAndGradient(params, batch, &grads);
    if (!std::isfinite(loss)) {
      WriteFileAtomic(log_path, EncodeLog(result.log));
      throw NumericError("non-finite training loss at step " + std::to_string(step));
    }
    try {
      nncore::OptimizerStep(params, grads, adam, cfg);
    } catch (const NumericError& e) {
      WriteFileAtomic(log_path, EncodeLog(result.log));
      throw NumericError("step " + std::to_string(step) + ": " + e.what());
    }
    if (session.ema.enabled) {
      if (ema) {
        nncore::EmaUpdate(*ema, params);
      } else if (step >= session.ema.start_step) {
        ema = nncore::StartEma(params, session.ema.half_life);
      }
    }
    loss_sum += loss;
    ++loss_count;
    if (step % cfg.eval_every == 0) {
      LogRow row;
      row.step = step;
      row.train_loss = loss_sum / loss_count;
      row.holdout_gap = std::numeric_limits<double>::quiet_NaN();
      if (!eval_items.empty()) {
        row.holdout_gap = evalens::Gap(
            PredictItems(*model, params, eval_data, eval_items, session.eval_top_k), eval_truth);
      }
      result.log.push_back(row);
      loss_sum = 0.0;
      loss_count = 0;
      WriteFileAtomic(log_path, EncodeLog(result.log));
    }
    if (step % cfg.checkpoint_every == 0 || step == cfg.max_steps) {
      const fs::path dir = CheckpointDir(session.out_dir, step);
      SaveTrainingCheckpoint(dir, spec, params, ema);
      result.checkpoints.push_back(dir);
    }
  }
  result.epochs = stream.epochs();
  if (ema) result.ema = ema->shadow;
  return result;
}

std::uint64_t FoldSeed(std::uint64_t seed, int fold) {
  return DeriveSeed(seed, "fold" + std::to_string(fold));
}

std::vector<FoldOutcome> TrainAllFolds(const TrainSession& base, int num_folds, int threads) {
  if (num_folds < 1) throw ConfigError("folds must be >= 1");
  if (threads < 1) throw ConfigError("threads must be >= 1");
  std::vector<FoldOutcome> outcomes(static_cast<std::size_t>(num_folds));
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int f = next++; f < num_folds; f = next++) {
      FoldOutcome& out = outcomes[static_cast<std::size_t>(f)];
      out.fold = f;
      try {
        TrainSession s = base;
        s.num_folds = num_folds;
        s.fold_index = f;
        s.config.seed = FoldSeed(base.config.seed, f);
        s.out_dir = base.out_dir / ("fold_" + std::to_string(f));
        out.checkpoints = RunTraining(s).checkpoints;
      } catch (const std::exception& e) {
        out.error = e.what();
      }
    }
  };
  const int n = std::min(threads, num_folds);
  if (n == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < n; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  return outcomes;
}

evalens::PredictionSet Predict(const fs::path& checkpoint, const fs::path& data_dir,
                               const PredictOptions& options) {
  nncore::Checkpoint ckpt = nncore::LoadCheckpoint(checkpoint);
  if (options.use_ema && !ckpt.ema) {
    throw SchemaError(checkpoint.string() + " holds no EMA tensors (trained without --ema)");
  }
  models::ModelSpec spec;
  try {
    spec = models::SpecFromJson(ckpt.model_config);
  } catch (const ConfigError& e) {
    throw SchemaError(checkpoint.string() + ": bad model config: " + e.what());
  }
  if (options.expected_model &&
      models::SpecToJson(*options.expected_model) != ckpt.model_config) {
    throw SchemaError(checkpoint.string() + ": model config does not match the checkpoint");
  }
  const auto model = models::BuildModel(spec);
  nncore::ParameterStore layout;
  model->Declare(layout);
  const nncore::ParameterStore& params = options.use_ema ? *ckpt.ema : ckpt.snapshot;
  if (!layout.SameLayout(params)) {
    throw SchemaError(checkpoint.string() + ": tensors do not match the model config");
  }
  const Dataset data = LoadDataset(data_dir, KindOf(spec));
  if (data.manifest.vocab_size != spec.vocab_size || data.input_dim() != spec.input_dim) {
    throw SchemaError("data in " + data_dir.string() + " does not match the checkpoint's model");
  }
  evalens::PredictionSet set =
      PredictItems(*model, params, data, VideoItems(data, AllShards(data)), options.top_k);
  set.tag = checkpoint.filename().string() + (options.use_ema ? "_ema" : "");
  return set;
}

}  // namespace vidlabel::train
