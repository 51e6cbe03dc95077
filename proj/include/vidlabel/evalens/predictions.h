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

#ifndef VIDLABEL_EVALENS_PREDICTIONS_H_
#define VIDLABEL_EVALENS_PREDICTIONS_H_

#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace vidlabel::evalens {

inline constexpr char kPredictionHeader[] = "VideoId,LabelConfidencePairs";

struct LabelScore {
  int label = 0;
  double confidence = 0.0;
  bool operator==(const LabelScore&) const = default;
};

// Ranked sparse predictions per video, keyed by video id. Each list is sorted
// by descending confidence with ties broken by ascending label.
struct PredictionSet {
  std::string tag;
  std::map<std::string, std::vector<LabelScore>> videos;
  bool operator==(const PredictionSet& o) const { return videos == o.videos; }
};

// Rounds to the 6 decimals the file format keeps, so an in-memory set equals
// what a read-back of its file yields.
double RoundConfidence(double c);

// Sorts by the ranking rule and truncates to top_k (<= 0 keeps everything).
void RankScores(std::vector<LabelScore>& scores, int top_k);

// Top-k of a dense probability row, confidences rounded.
std::vector<LabelScore> TopK(const double* probs, int size, int top_k);

// Checks the ranking, range and uniqueness invariants; throws SchemaError.
void ValidatePredictions(const PredictionSet& set);

std::string EncodePredictions(const PredictionSet& set);
PredictionSet ParsePredictions(const std::string& text, const std::string& source = "<memory>");
void WritePredictions(const std::filesystem::path& path, const PredictionSet& set);
// The tag defaults to the file stem.
PredictionSet ReadPredictions(const std::filesystem::path& path);

// Per-video label sets.
using GroundTruth = std::map<std::string, std::vector<int>>;

GroundTruth ParseGroundTruth(const std::string& text, const std::string& source = "<memory>");
GroundTruth ReadGroundTruth(const std::filesystem::path& path);

}  // namespace vidlabel::evalens

#endif  // VIDLABEL_EVALENS_PREDICTIONS_H_
