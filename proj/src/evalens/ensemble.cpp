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

#include "vidlabel/evalens/ensemble.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "vidlabel/common/errors.h"
#include "vidlabel/common/fs.h"

namespace vidlabel::evalens {

namespace fs = std::filesystem;

EnsembleSpec EnsembleSpecFromJson(const nlohmann::json& j, const fs::path& base_dir) {
  if (!j.is_object()) throw ConfigError("ensemble spec must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (key != "members" && key != "top_k") throw ConfigError("ensemble spec: unknown key '" + key + "'");
  }
  EnsembleSpec spec;
  try {
    if (j.contains("top_k")) spec.top_k = j.at("top_k").get<int>();
    for (const auto& m : j.at("members")) {
      for (const auto& [key, value] : m.items()) {
        if (key != "file" && key != "weight") {
          throw ConfigError("ensemble member: unknown key '" + key + "'");
        }
      }
      EnsembleMember member;
      fs::path file = m.at("file").get<std::string>();
      if (file.is_relative()) file = base_dir / file;
      member.file = file.string();
      if (m.contains("weight")) member.weight = m.at("weight").get<double>();
      spec.members.push_back(member);
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("ensemble spec: ") + e.what());
  }
  if (spec.members.empty()) throw ConfigError("ensemble spec has no members");
  if (spec.top_k < 1) throw ConfigError("ensemble top_k must be >= 1");
  std::vector<double> weights;
  for (const auto& m : spec.members) weights.push_back(m.weight);
  ValidateEnsembleWeights(weights);
  return spec;
}

nlohmann::ordered_json EnsembleSpecToJson(const EnsembleSpec& spec) {
  nlohmann::ordered_json j;
  j["members"] = nlohmann::ordered_json::array();
  for (const auto& m : spec.members) j["members"].push_back({{"file", m.file}, {"weight", m.weight}});
  j["top_k"] = spec.top_k;
  return j;
}

EnsembleSpec LoadEnsembleSpec(const fs::path& path) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(ReadFile(path));
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
  return EnsembleSpecFromJson(j, path.parent_path());
}

void ValidateEnsembleWeights(const std::vector<double>& weights) {
  if (weights.empty()) throw ConfigError("ensemble needs at least one member");
  double total = 0.0;
  for (double w : weights) {
    if (!std::isfinite(w) || w < 0.0) throw ConfigError("ensemble weights must be finite and >= 0");
    total += w;
  }
  if (total <= 0.0) throw ConfigError("ensemble weights are all zero");
}

EnsembleResult Ensemble(const std::vector<PredictionSet>& members,
                        const std::vector<double>& weights, int top_k) {
  if (members.size() != weights.size()) throw ArgumentError("ensemble: one weight per member");
  ValidateEnsembleWeights(weights);
  if (top_k < 1) throw ConfigError("ensemble top_k must be >= 1");
  double total = 0.0;
  for (double w : weights) total += w;

  std::set<std::string> all;
  for (const auto& m : members) {
    for (const auto& [id, scores] : m.videos) all.insert(id);
  }
  EnsembleResult result;
  result.predictions.tag = "ensemble";
  for (const auto& id : all) {
    bool everywhere = true;
    for (const auto& m : members) everywhere = everywhere && m.videos.count(id) > 0;
    if (!everywhere) {
      ++result.dropped_videos;
      continue;
    }
    std::map<int, double> sum;
    for (std::size_t i = 0; i < members.size(); ++i) {
      const double w = weights[i] / total;
      for (const auto& s : members[i].videos.at(id)) sum[s.label] += w * s.confidence;
    }
    std::vector<LabelScore> scores;
    for (const auto& [label, c] : sum) {
      scores.push_back({label, RoundConfidence(std::clamp(c, 0.0, 1.0))});
    }
    RankScores(scores, top_k);
    result.predictions.videos.emplace(id, std::move(scores));
  }
  return result;
}

EnsembleResult Ensemble(const EnsembleSpec& spec) {
  std::vector<PredictionSet> members;
  std::vector<double> weights;
  for (const auto& m : spec.members) {
    members.push_back(ReadPredictions(m.file));
    weights.push_back(m.weight);
  }
  return Ensemble(members, weights, spec.top_k);
}

}  // namespace vidlabel::evalens
