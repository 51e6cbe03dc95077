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

#include "vidlabel/evalens/predictions.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>

#include <json.hpp>

#include "vidlabel/common/errors.h"
#include "vidlabel/common/fs.h"

namespace vidlabel::evalens {

namespace fs = std::filesystem;

double RoundConfidence(double c) { return std::round(c * 1e6) / 1e6; }

void RankScores(std::vector<LabelScore>& scores, int top_k) {
  std::sort(scores.begin(), scores.end(), [](const LabelScore& a, const LabelScore& b) {
    if (a.confidence != b.confidence) return a.confidence > b.confidence;
    return a.label < b.label;
  });
  if (top_k > 0 && scores.size() > static_cast<std::size_t>(top_k)) {
    scores.resize(static_cast<std::size_t>(top_k));
  }
}

std::vector<LabelScore> TopK(const double* probs, int size, int top_k) {
  std::vector<LabelScore> scores;
  scores.reserve(static_cast<std::size_t>(size));
  for (int l = 0; l < size; ++l) {
    if (!std::isfinite(probs[l])) throw NumericError("non-finite probability");
    scores.push_back({l, RoundConfidence(std::clamp(probs[l], 0.0, 1.0))});
  }
  RankScores(scores, top_k);
  return scores;
}

void ValidatePredictions(const PredictionSet& set) {
  for (const auto& [id, scores] : set.videos) {
    std::set<int> seen;
    for (std::size_t i = 0; i < scores.size(); ++i) {
      const auto& s = scores[i];
      if (!(s.confidence >= 0.0 && s.confidence <= 1.0)) {
        throw SchemaError("video '" + id + "': confidence outside [0, 1]");
      }
      if (s.label < 0) throw SchemaError("video '" + id + "': negative label");
      if (!seen.insert(s.label).second) {
        throw SchemaError("video '" + id + "': duplicate label " + std::to_string(s.label));
      }
      if (i > 0) {
        const auto& p = scores[i - 1];
        if (p.confidence < s.confidence || (p.confidence == s.confidence && p.label > s.label)) {
          throw SchemaError("video '" + id + "': predictions not in rank order");
        }
      }
    }
  }
}

std::string EncodePredictions(const PredictionSet& set) {
  std::string out = std::string(kPredictionHeader) + "\n";
  char buf[64];
  for (const auto& [id, scores] : set.videos) {
    out += id;
    out += ',';
    for (std::size_t i = 0; i < scores.size(); ++i) {
      std::snprintf(buf, sizeof(buf), "%s%d %.6f", i ? " " : "", scores[i].label,
                    scores[i].confidence);
      out += buf;
    }
    out += '\n';
  }
  return out;
}

PredictionSet ParsePredictions(const std::string& text, const std::string& source) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != kPredictionHeader) {
    throw ParseError(source + ": missing header '" + kPredictionHeader + "'");
  }
  PredictionSet set;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const std::string where = source + ":" + std::to_string(lineno);
    const auto comma = line.find(',');
    if (comma == std::string::npos || comma == 0) throw ParseError(where + ": expected 'id,pairs'");
    const std::string id = line.substr(0, comma);
    std::istringstream pairs(line.substr(comma + 1));
    std::vector<LabelScore> scores;
    std::string label_tok, conf_tok;
    while (pairs >> label_tok) {
      if (!(pairs >> conf_tok)) throw ParseError(where + ": label without confidence");
      LabelScore s;
      std::size_t used = 0;
      try {
        s.label = std::stoi(label_tok, &used);
        if (used != label_tok.size()) throw std::invalid_argument("label");
        s.confidence = std::stod(conf_tok, &used);
        if (used != conf_tok.size()) throw std::invalid_argument("confidence");
      } catch (const std::logic_error&) {
        throw ParseError(where + ": bad pair '" + label_tok + " " + conf_tok + "'");
      }
      scores.push_back(s);
    }
    if (!set.videos.emplace(id, std::move(scores)).second) {
      throw SchemaError(where + ": duplicate video id '" + id + "'");
    }
  }
  // The file keeps 6 decimals; ties created by rounding are re-ranked by label.
  for (auto& [id, scores] : set.videos) RankScores(scores, 0);
  ValidatePredictions(set);
  return set;
}

void WritePredictions(const fs::path& path, const PredictionSet& set) {
  ValidatePredictions(set);
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  WriteFileAtomic(path, EncodePredictions(set));
}

PredictionSet ReadPredictions(const fs::path& path) {
  PredictionSet set = ParsePredictions(ReadFile(path), path.string());
  set.tag = path.stem().string();
  return set;
}

GroundTruth ParseGroundTruth(const std::string& text, const std::string& source) {
  GroundTruth truth;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const std::string where = source + ":" + std::to_string(lineno);
    std::string id;
    std::vector<int> labels;
    try {
      const auto j = nlohmann::json::parse(line);
      id = j.at("id").get<std::string>();
      labels = j.at("labels").get<std::vector<int>>();
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(where + ": " + e.what());
    }
    std::sort(labels.begin(), labels.end());
    labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
    if (!truth.emplace(id, std::move(labels)).second) {
      throw SchemaError(where + ": duplicate video id '" + id + "'");
    }
  }
  return truth;
}

GroundTruth ReadGroundTruth(const fs::path& path) {
  return ParseGroundTruth(ReadFile(path), path.string());
}

}  // namespace vidlabel::evalens
