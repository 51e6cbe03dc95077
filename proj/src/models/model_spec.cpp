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

#include "vidlabel/models/model_spec.h"

#include <algorithm>
#include <cmath>

#include "vidlabel/common/errors.h"

namespace vidlabel::models {

using nlohmann::json;
using ordered_json = nlohmann::ordered_json;

std::string_view KindName(ModelKind kind) {
  switch (kind) {
    case ModelKind::kMonn: return "monn";
    case ModelKind::kLogistic: return "logistic";
    case ModelKind::kBiRnn: return "birnn";
    case ModelKind::kBoosted: return "boosted";
  }
  return "monn";
}

std::string_view CellName(CellType cell) { return cell == CellType::kLstm ? "lstm" : "gru"; }

std::string_view BlockName(FeatureBlock block) {
  switch (block) {
    case FeatureBlock::kMean: return "mean";
    case FeatureBlock::kStd: return "std";
    case FeatureBlock::kX3: return "x3";
    case FeatureBlock::kNumFrames: return "num_frames";
  }
  return "mean";
}

namespace {

ModelKind ParseKind(std::string_view s) {
  for (ModelKind k : {ModelKind::kMonn, ModelKind::kLogistic, ModelKind::kBiRnn,
                      ModelKind::kBoosted}) {
    if (KindName(k) == s) return k;
  }
  throw ConfigError("unknown model kind '" + std::string(s) + "'");
}

CellType ParseCell(std::string_view s) {
  if (s == "lstm") return CellType::kLstm;
  if (s == "gru") return CellType::kGru;
  throw ConfigError("unknown cell '" + std::string(s) + "'");
}

FeatureBlock ParseBlock(std::string_view s) {
  for (FeatureBlock b : {FeatureBlock::kMean, FeatureBlock::kStd, FeatureBlock::kX3,
                         FeatureBlock::kNumFrames}) {
    if (BlockName(b) == s) return b;
  }
  throw ConfigError("unknown input feature '" + std::string(s) + "'");
}

std::string_view ReadoutName(LstmReadout r) {
  switch (r) {
    case LstmReadout::kCell: return "c";
    case LstmReadout::kHidden: return "h";
    case LstmReadout::kBoth: return "ch";
  }
  return "c";
}

LstmReadout ParseReadout(std::string_view s) {
  if (s == "c") return LstmReadout::kCell;
  if (s == "h") return LstmReadout::kHidden;
  if (s == "ch") return LstmReadout::kBoth;
  throw ConfigError("unknown LSTM readout '" + std::string(s) + "' (want c, h or ch)");
}

int Scale(int width, double factor) {
  return std::max(1, static_cast<int>(std::lround(width * factor)));
}

}  // namespace

int ModelSpec::video_input_width() const {
  int w = 0;
  for (FeatureBlock b : input_features) w += b == FeatureBlock::kNumFrames ? 1 : input_dim;
  return w;
}

void ValidateSpec(const ModelSpec& s) {
  if (s.vocab_size < 1) throw ConfigError("model: vocab_size must be >= 1");
  if (s.input_dim < 1) throw ConfigError("model: input_dim must be >= 1");
  if (s.truncate_labels && (*s.truncate_labels < 1 || *s.truncate_labels > s.vocab_size)) {
    throw ConfigError("model: truncate_labels must lie in [1, V]");
  }
  if (s.num_experts < 1) throw ConfigError("model: num_experts must be >= 1");
  if (std::any_of(s.hidden.begin(), s.hidden.end(), [](int w) { return w < 1; })) {
    throw ConfigError("model: hidden widths must be >= 1");
  }
  switch (s.kind) {
    case ModelKind::kMonn:
    case ModelKind::kLogistic:
      if (s.input_features.empty()) throw ConfigError("model: input_features is empty");
      if (s.kind == ModelKind::kMonn && s.hidden.empty()) {
        throw ConfigError("model: MoNN needs at least one hidden layer");
      }
      break;
    case ModelKind::kBiRnn:
      if (s.layer1_units < 1 || s.layer2_units < 1) {
        throw ConfigError("model: recurrent units must be >= 1");
      }
      if (s.max_frames < 1) throw ConfigError("model: max_frames must be >= 1");
      break;
    case ModelKind::kBoosted:
      if (!s.base) throw ConfigError("model: boosted model needs a base");
      if (s.hidden.size() != 1) throw ConfigError("model: boost network takes one hidden width");
      if (s.input_features.empty()) throw ConfigError("model: input_features is empty");
      if (s.base->kind == ModelKind::kBiRnn || s.base->kind == ModelKind::kBoosted) {
        throw ConfigError("model: boosting wraps a video-level base model");
      }
      ValidateSpec(*s.base);
      break;
  }
}

ordered_json SpecToJson(const ModelSpec& s) {
  ordered_json j;
  j["kind"] = KindName(s.kind);
  if (!s.preset.empty()) j["preset"] = s.preset;
  j["vocab_size"] = s.vocab_size;
  j["input_dim"] = s.input_dim;
  if (s.truncate_labels) j["truncate_labels"] = *s.truncate_labels;
  switch (s.kind) {
    case ModelKind::kMonn:
      j["num_experts"] = s.num_experts;
      j["hidden"] = s.hidden;
      [[fallthrough]];
    case ModelKind::kLogistic: {
      ordered_json f = ordered_json::array();
      for (auto b : s.input_features) f.push_back(BlockName(b));
      j["input_features"] = std::move(f);
      break;
    }
    case ModelKind::kBiRnn:
      j["num_experts"] = s.num_experts;
      j["cell"] = CellName(s.cell);
      j["layer1_units"] = s.layer1_units;
      j["layer2_units"] = s.layer2_units;
      j["max_frames"] = s.max_frames;
      if (s.cell == CellType::kLstm) {
        j["readout"] = ReadoutName(s.readout);
        j["forget_bias"] = s.forget_bias;
      }
      break;
    case ModelKind::kBoosted: {
      j["hidden"] = s.hidden;
      ordered_json f = ordered_json::array();
      for (auto b : s.input_features) f.push_back(BlockName(b));
      j["input_features"] = std::move(f);
      if (s.base) j["base"] = SpecToJson(*s.base);
      if (!s.base_checkpoint.empty()) j["base_checkpoint"] = s.base_checkpoint;
      j["base_use_ema"] = s.base_use_ema;
      break;
    }
  }
  return j;
}

namespace {

ModelSpec PresetOrDefault(const json& j, double factor) {
  if (j.contains("preset")) return PresetSpec(j.at("preset").get<std::string>(), factor);
  if (!j.contains("kind")) throw ConfigError("model: need 'preset' or 'kind'");
  ModelSpec s;
  s.kind = ParseKind(j.at("kind").get<std::string>());
  if (s.kind == ModelKind::kBiRnn) s.num_experts = 2;
  return s;
}

}  // namespace

ModelSpec SpecFromJson(const json& j) {
  static const char* kKeys[] = {
      "preset",       "width_factor", "kind",         "vocab_size",  "input_dim",
      "truncate_labels", "num_experts", "hidden",      "input_features", "cell",
      "layer1_units", "layer2_units", "max_frames",   "readout",     "forget_bias",
      "base",         "base_checkpoint", "base_use_ema"};
  if (!j.is_object()) throw ConfigError("model config must be an object");
  for (const auto& [key, value] : j.items()) {
    if (std::find_if(std::begin(kKeys), std::end(kKeys),
                     [&](const char* k) { return key == k; }) == std::end(kKeys)) {
      throw ConfigError("model: unknown key '" + key + "'");
    }
  }
  try {
    const double factor = j.value("width_factor", 1.0);
    if (!(factor > 0.0)) throw ConfigError("model: width_factor must be > 0");
    ModelSpec s = PresetOrDefault(j, factor);
    if (j.contains("kind")) {
      const ModelKind k = ParseKind(j.at("kind").get<std::string>());
      if (j.contains("preset") && k != s.kind) {
        throw ConfigError("model: kind contradicts preset '" + s.preset + "'");
      }
      s.kind = k;
    }
    if (j.contains("vocab_size")) s.vocab_size = j.at("vocab_size").get<int>();
    if (j.contains("input_dim")) s.input_dim = j.at("input_dim").get<int>();
    if (j.contains("truncate_labels")) {
      if (j.at("truncate_labels").is_null()) {
        s.truncate_labels.reset();
      } else {
        s.truncate_labels = j.at("truncate_labels").get<int>();
      }
    }
    if (j.contains("num_experts")) s.num_experts = j.at("num_experts").get<int>();
    if (j.contains("hidden")) s.hidden = j.at("hidden").get<std::vector<int>>();
    if (j.contains("input_features")) {
      s.input_features.clear();
      for (const auto& f : j.at("input_features")) {
        s.input_features.push_back(ParseBlock(f.get<std::string>()));
      }
    }
    if (j.contains("cell")) s.cell = ParseCell(j.at("cell").get<std::string>());
    if (j.contains("layer1_units")) s.layer1_units = j.at("layer1_units").get<int>();
    if (j.contains("layer2_units")) s.layer2_units = j.at("layer2_units").get<int>();
    if (j.contains("max_frames")) s.max_frames = j.at("max_frames").get<int>();
    if (j.contains("readout")) s.readout = ParseReadout(j.at("readout").get<std::string>());
    if (j.contains("forget_bias")) s.forget_bias = j.at("forget_bias").get<double>();
    if (j.contains("base")) s.base = std::make_shared<ModelSpec>(SpecFromJson(j.at("base")));
    if (j.contains("base_checkpoint")) {
      s.base_checkpoint = j.at("base_checkpoint").get<std::string>();
    }
    if (j.contains("base_use_ema")) s.base_use_ema = j.at("base_use_ema").get<bool>();
    return s;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("model: ") + e.what());
  }
}

ModelSpec PresetSpec(std::string_view name, double f) {
  ModelSpec s;
  s.preset = std::string(name);
  if (name == "monn2lw") {
    s.kind = ModelKind::kMonn;
    s.hidden = {Scale(2305 * 6, f), Scale(2305 * 3, f)};
  } else if (name == "monn3lw") {
    // Middle width is 2035 as published; it may be a transposition of 2305.
    s.kind = ModelKind::kMonn;
    s.hidden = {Scale(2305 * 8, f), Scale(2035, f), Scale(2305 * 3, f)};
  } else if (name == "monn3l") {
    s.kind = ModelKind::kMonn;
    s.hidden = {Scale(4096, f), Scale(4096, f), Scale(4096, f)};
  } else if (name == "monn4ln") {
    s.kind = ModelKind::kMonn;
    s.hidden = {Scale(2048, f), Scale(2048, f), Scale(2048, f), Scale(2048, f)};
  } else if (name == "bilstm") {
    s.kind = ModelKind::kBiRnn;
    s.cell = CellType::kLstm;
    s.num_experts = 2;
    s.layer1_units = Scale(600, f);
    s.layer2_units = Scale(1200, f);
  } else if (name == "bigru") {
    s.kind = ModelKind::kBiRnn;
    s.cell = CellType::kGru;
    s.num_experts = 2;
    s.layer1_units = Scale(625, f);
    s.layer2_units = Scale(1250, f);
  } else if (name == "logistic") {
    s.kind = ModelKind::kLogistic;
  } else {
    throw ConfigError("unknown preset '" + std::string(name) + "'");
  }
  return s;
}

std::vector<std::string> PresetNames() {
  return {"monn2lw", "monn3lw", "monn3l", "monn4ln", "bilstm", "bigru", "logistic"};
}

}  // namespace vidlabel::models
