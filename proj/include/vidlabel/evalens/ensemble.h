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

#ifndef VIDLABEL_EVALENS_ENSEMBLE_H_
#define VIDLABEL_EVALENS_ENSEMBLE_H_

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "vidlabel/evalens/predictions.h"

namespace vidlabel::evalens {

struct EnsembleMember {
  std::string file;
  double weight = 1.0;
};

struct EnsembleSpec {
  std::vector<EnsembleMember> members;
  int top_k = 20;
};

// {"members": [{"file": ..., "weight": ...}], "top_k": 20}. Relative member
// paths are resolved against `base_dir`.
EnsembleSpec EnsembleSpecFromJson(const nlohmann::json& j, const std::filesystem::path& base_dir);
nlohmann::ordered_json EnsembleSpecToJson(const EnsembleSpec& spec);
EnsembleSpec LoadEnsembleSpec(const std::filesystem::path& path);
void ValidateEnsembleWeights(const std::vector<double>& weights);

struct EnsembleResult {
  PredictionSet predictions;
  int dropped_videos = 0;  // videos not shared by every member
};

// Weighted average of sparse confidence vectors with normalized weights,
// re-ranked to top_k. Only videos present in every member are kept.
EnsembleResult Ensemble(const std::vector<PredictionSet>& members,
                        const std::vector<double>& weights, int top_k);
EnsembleResult Ensemble(const EnsembleSpec& spec);

}  // namespace vidlabel::evalens

#endif  // VIDLABEL_EVALENS_ENSEMBLE_H_
