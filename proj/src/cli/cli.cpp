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

#include "vidlabel/cli/cli.h"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <optional>

#include "vidlabel/cli/config.h"
#include "vidlabel/cli/pipeline.h"
#include "vidlabel/common/errors.h"
#include "vidlabel/dataio/synthetic.h"
#include "vidlabel/evalens/ensemble.h"
#include "vidlabel/evalens/metrics.h"
#include "vidlabel/features/feature_io.h"
#include "vidlabel/train/trainer.h"

namespace vidlabel::cli {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

struct Globals {
  std::optional<std::uint64_t> seed;
  int threads = 1;
  std::string config;
};

ordered_json NumberOrNull(double v) { return std::isnan(v) ? ordered_json(nullptr) : ordered_json(v); }

int RunSynth(const Globals& g, const std::string& out_dir, const dataio::SyntheticParams& flags,
             const CLI::App& cmd, std::ostream& out) {
  dataio::SyntheticParams p = flags;
  if (!g.config.empty()) {
    p = SyntheticParamsFromJson(LoadJsonFile(g.config));
    // Explicit flags win over the file.
    if (cmd.count("--videos")) p.num_videos = flags.num_videos;
    if (cmd.count("--vocab")) p.vocab_size = flags.vocab_size;
    if (cmd.count("--topics")) p.num_topics = flags.num_topics;
    if (cmd.count("--shards")) p.num_shards = flags.num_shards;
    if (cmd.count("--holdout")) p.holdout_videos = flags.holdout_videos;
    if (cmd.count("--rgb-dim")) p.rgb_dim = flags.rgb_dim;
    if (cmd.count("--audio-dim")) p.audio_dim = flags.audio_dim;
    if (cmd.count("--min-frames")) p.min_frames = flags.min_frames;
    if (cmd.count("--max-frames")) p.max_frames = flags.max_frames;
    if (cmd.count("--centroid-scale")) p.centroid_scale = flags.centroid_scale;
  }
  if (g.seed) p.seed = *g.seed;
  const dataio::DatasetManifest m = dataio::GenerateSynthetic(p, out_dir);
  out << ordered_json{{"out", out_dir},
                      {"videos", p.num_videos},
                      {"holdout", p.holdout_videos},
                      {"shards", m.shard_paths.size()}}
             .dump()
      << "\n";
  return kExitOk;
}

}  // namespace

int Dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"vidlabel: multi-label video classification toolkit", "vidlabel"};
  app.require_subcommand(1, 1);
  app.fallthrough();
  Globals g;
  app.add_option("--seed", g.seed, "Random seed (overrides the config)");
  app.add_option("--threads", g.threads, "Worker threads for fold fan-out")->check(CLI::PositiveNumber);
  app.add_option("--config", g.config, "JSON config file");

  // synth
  auto* synth = app.add_subcommand("synth", "Generate a synthetic frame-level dataset");
  std::string synth_out;
  dataio::SyntheticParams sp;
  sp.num_videos = 1000;
  sp.vocab_size = 50;
  sp.num_topics = 12;
  synth->add_option("--out", synth_out, "Output directory")->required();
  synth->add_option("--videos", sp.num_videos, "Training videos");
  synth->add_option("--vocab", sp.vocab_size, "Vocabulary size V");
  synth->add_option("--topics", sp.num_topics, "Latent topics");
  synth->add_option("--shards", sp.num_shards, "Shard count");
  synth->add_option("--holdout", sp.holdout_videos, "Holdout videos written to <out>/holdout");
  synth->add_option("--rgb-dim", sp.rgb_dim, "Visual feature width");
  synth->add_option("--audio-dim", sp.audio_dim, "Audio feature width");
  synth->add_option("--min-frames", sp.min_frames, "Minimum frames per video");
  synth->add_option("--max-frames", sp.max_frames, "Maximum frames per video");
  synth->add_option("--centroid-scale", sp.centroid_scale, "Topic centroid spread");

  // featurize
  auto* feat = app.add_subcommand("featurize", "Aggregate frames into video-level feature rows");
  std::string feat_in, feat_out, feat_mode = "off", moments_in;
  bool no_augment = false;
  feat->add_option("--in", feat_in, "Frame dataset directory")->required();
  feat->add_option("--out", feat_out, "Output directory")->required();
  feat->add_option("--normalize", feat_mode, "off | global_l2");
  feat->add_option("--moments-in", moments_in, "Reuse moments fitted on another dataset");
  feat->add_flag("--no-augment", no_augment, "Emit whole-video rows only");

  // train
  auto* tr = app.add_subcommand("train", "Train one fold, or all folds when --fold is omitted");
  std::optional<int> fold;
  std::optional<int> num_folds;
  std::string train_out, train_data, eval_data;
  std::optional<double> ema_half_life;
  std::optional<int> truncate;
  tr->add_option("--fold", fold, "Fold index");
  tr->add_option("--folds", num_folds, "Number of folds");
  tr->add_option("--out", train_out, "Output directory");
  tr->add_option("--data", train_data, "Training data directory (overrides the config)");
  tr->add_option("--eval-data", eval_data, "Separate evaluation dataset");
  tr->add_option("--ema", ema_half_life, "Keep an EMA of the weights with this half-life");
  tr->add_option("--truncate", truncate, "Fit only the first K labels");

  // predict
  auto* pr = app.add_subcommand("predict", "Write top-k predictions of a checkpoint");
  std::string ckpt, pred_data, pred_out;
  bool use_ema = false;
  int top_k = 20;
  pr->add_option("--ckpt", ckpt, "Checkpoint directory")->required();
  pr->add_option("--data", pred_data, "Dataset directory")->required();
  pr->add_option("--out", pred_out, "Prediction CSV")->required();
  pr->add_flag("--ema", use_ema, "Use the EMA weights");
  pr->add_option("--top-k", top_k, "Predictions per video")->check(CLI::PositiveNumber);

  // evaluate
  auto* ev = app.add_subcommand("evaluate", "Global average precision of a prediction file");
  std::string ev_pred, ev_truth;
  int cap = 0;
  ev->add_option("--pred", ev_pred, "Prediction CSV")->required();
  ev->add_option("--truth", ev_truth, "Ground-truth JSON lines")->required();
  ev->add_option("--cap", cap, "Cap positives per video in the recall denominator (0: off)");

  // correlate
  auto* co = app.add_subcommand("correlate", "Pairwise prediction correlation matrix");
  std::vector<std::string> co_files;
  int corr_k = 20;
  co->add_option("--preds", co_files, "Prediction CSVs")->required()->expected(2, -1);
  co->add_option("--k", corr_k, "Entries per video")->check(CLI::PositiveNumber);

  // ensemble
  auto* en = app.add_subcommand("ensemble", "Weighted average of prediction files");
  std::string en_spec, en_out;
  en->add_option("--spec", en_spec, "Ensemble spec JSON")->required();
  en->add_option("--out", en_out, "Output CSV")->required();

  // pipeline
  app.add_subcommand("pipeline", "Run the configured end-to-end pipeline");

  std::vector<std::string> argv(args.rbegin(), args.rend());
  try {
    app.parse(argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << ordered_json{{"error", e.what()}, {"exit_code", kExitUsage}}.dump() << "\n";
    err << app.help();
    return kExitUsage;
  }

  try {
    if (*synth) return RunSynth(g, synth_out, sp, *synth, out);

    if (*feat) {
      features::FeaturizeOptions o;
      if (!g.config.empty()) o = FeaturizeOptionsFromJson(LoadJsonFile(g.config));
      if (feat->count("--normalize")) o.mode = features::ParseMode(feat_mode);
      if (no_augment) o.augment = false;
      if (!moments_in.empty()) o.moments_in = moments_in;
      const auto s = features::FeaturizeDataset(feat_in, feat_out, o);
      out << ordered_json{{"videos", s.videos},
                          {"rows", s.rows},
                          {"single_frame_videos", s.single_frame_videos}}
                 .dump()
          << "\n";
      return kExitOk;
    }

    if (*tr) {
      if (g.config.empty()) throw UsageError("train needs --config FILE");
      const fs::path cfg_path = g.config;
      train::TrainSession s = train::SessionFromJson(LoadJsonFile(cfg_path), cfg_path.parent_path());
      if (g.seed) s.config.seed = *g.seed;
      if (!train_out.empty()) s.out_dir = train_out;
      if (!train_data.empty()) s.data_dir = train_data;
      if (!eval_data.empty()) s.eval_dir = fs::path(eval_data);
      if (ema_half_life) {
        s.ema.enabled = true;
        s.ema.half_life = *ema_half_life;
      }
      if (truncate) s.model.truncate_labels = *truncate;
      if (num_folds) s.num_folds = *num_folds;
      if (fold) {
        s.fold_index = *fold;
        const train::TrainResult r = train::RunTraining(s);
        ordered_json ckpts = ordered_json::array();
        for (const auto& c : r.checkpoints) ckpts.push_back(c.string());
        out << ordered_json{{"fold", s.fold_index},
                            {"checkpoints", ckpts},
                            {"epochs", r.epochs},
                            {"final_gap", r.log.empty() ? ordered_json(nullptr)
                                                        : NumberOrNull(r.log.back().holdout_gap)}}
                   .dump()
            << "\n";
        return kExitOk;
      }
      const auto outcomes = train::TrainAllFolds(s, s.num_folds, g.threads);
      ordered_json folds = ordered_json::array();
      bool failed = false;
      for (const auto& o : outcomes) {
        ordered_json ckpts = ordered_json::array();
        for (const auto& c : o.checkpoints) ckpts.push_back(c.string());
        ordered_json entry{{"fold", o.fold}, {"checkpoints", ckpts}};
        if (!o.error.empty()) {
          entry["error"] = o.error;
          err << "fold " << o.fold << ": " << o.error << "\n";
          failed = true;
        }
        folds.push_back(entry);
      }
      out << ordered_json{{"folds", folds}}.dump() << "\n";
      return failed ? kExitFailure : kExitOk;
    }

    if (*pr) {
      train::PredictOptions o;
      o.use_ema = use_ema;
      o.top_k = top_k;
      const auto set = train::Predict(ckpt, pred_data, o);
      evalens::WritePredictions(pred_out, set);
      out << ordered_json{{"videos", set.videos.size()}, {"out", pred_out}}.dump() << "\n";
      return kExitOk;
    }

    if (*ev) {
      evalens::GapOptions o;
      o.max_positives_per_video = cap;
      const double gap =
          evalens::Gap(evalens::ReadPredictions(ev_pred), evalens::ReadGroundTruth(ev_truth), o);
      out << ordered_json{{"gap", gap}}.dump() << "\n";
      return kExitOk;
    }

    if (*co) {
      std::vector<evalens::PredictionSet> sets;
      for (const auto& f : co_files) sets.push_back(evalens::ReadPredictions(f));
      out << ordered_json{{"files", co_files}, {"k", corr_k},
                          {"matrix", evalens::CorrelationMatrix(sets, corr_k)}}
                 .dump()
          << "\n";
      return kExitOk;
    }

    if (*en) {
      const auto r = evalens::Ensemble(evalens::LoadEnsembleSpec(en_spec));
      if (r.dropped_videos > 0) {
        err << "warning: " << r.dropped_videos << " videos not shared by every member were dropped\n";
      }
      evalens::WritePredictions(en_out, r.predictions);
      out << ordered_json{{"videos", r.predictions.videos.size()},
                          {"dropped", r.dropped_videos},
                          {"out", en_out}}
                 .dump()
          << "\n";
      return kExitOk;
    }

    // pipeline
    if (g.config.empty()) throw UsageError("pipeline needs --config FILE");
    PipelineConfig pc = LoadPipelineConfig(g.config);
    if (g.seed) {
      pc.train.seed = *g.seed;
      if (pc.synth) pc.synth->seed = *g.seed;
    }
    const PipelineResult r = RunPipeline(pc, g.threads, err);
    out << ordered_json{{"report", (pc.work_dir / kReportFile).string()},
                        {"ensemble_gap", r.report.at("ensemble_gap")},
                        {"median_single_gap", r.report.at("median_single_gap")},
                        {"stages_run", r.stages_run},
                        {"stages_skipped", r.stages_skipped}}
               .dump()
        << "\n";
    return kExitOk;
  } catch (const UsageError& e) {
    err << ordered_json{{"error", e.what()}, {"exit_code", kExitUsage}}.dump() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << ordered_json{{"error", e.what()}, {"exit_code", kExitFailure}}.dump() << "\n";
    return kExitFailure;
  }
}

int Dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return Dispatch(args, out, err);
}

}  // namespace vidlabel::cli
