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

#ifndef VIDLABEL_MODELS_MODEL_SPEC_H_
#define VIDLABEL_MODELS_MODEL_SPEC_H_

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace vidlabel::models {

enum class ModelKind { kMonn, kLogistic, kBiRnn, kBoosted };
enum class CellType { kLstm, kGru };
// What an LSTM hands to the classifier from its last valid step: the memory
// cell c, the output h, or both concatenated.
enum class LstmReadout { kCell, kHidden, kBoth };
enum class FeatureBlock { kMean, kStd, kX3, kNumFrames };

// num_frames enters video-level models divided by this constant.
inline constexpr double kNumFramesScale = 300.0;

// Resolved, declarative description of a model. Stored verbatim in every
// checkpoint so that prediction needs nothing but the checkpoint directory.
struct ModelSpec {
  ModelKind kind = ModelKind::kMonn;
  std::string preset;
  int vocab_size = 0;  // V, taken from the dataset
  int input_dim = 0;   // per-frame D = D_rgb + D_audio, taken from the dataset
  std::optional<int> truncate_labels;

  // Mixture-of-experts head and video-level inputs.
  int num_experts = 3;
  std::vector<int> hidden;  // MoNN expert tower widths, or the boost hidden layer
  std::vector<FeatureBlock> input_features = {FeatureBlock::kMean, FeatureBlock::kStd,
                                              FeatureBlock::kNumFrames};

  // Recurrent models.
  CellType cell = CellType::kLstm;
  int layer1_units = 0;  // per direction
  int layer2_units = 0;
  int max_frames = 300;
  LstmReadout readout = LstmReadout::kCell;
  double forget_bias = 1.0;

  // Boosting: base model spec (embedded once resolved) and where to load its
  // trained weights from.
  std::shared_ptr<ModelSpec> base;
  std::string base_checkpoint;
  bool base_use_ema = false;

  // Labels the head actually fits: truncate_labels or V.
  int fitted_labels() const { return truncate_labels.value_or(vocab_size); }
  // Width of the video-level input vector.
  int video_input_width() const;
};

std::string_view KindName(ModelKind kind);
std::string_view CellName(CellType cell);
std::string_view BlockName(FeatureBlock block);

// Throws ConfigError when counts are out of range for the kind.
void ValidateSpec(const ModelSpec& spec);

nlohmann::ordered_json SpecToJson(const ModelSpec& spec);
// Strict: unknown keys raise ConfigError. Accepts a "preset" plus overrides,
// or an explicit "kind". "width_factor" scales preset widths.
ModelSpec SpecFromJson(const nlohmann::json& j);

// Named presets: monn2lw, monn3lw, monn3l, monn4ln, bilstm, bigru, logistic.
// Widths are multiplied by `width_factor` and rounded, never below 1.
ModelSpec PresetSpec(std::string_view name, double width_factor = 1.0);
std::vector<std::string> PresetNames();

}  // namespace vidlabel::models

#endif  // VIDLABEL_MODELS_MODEL_SPEC_H_
