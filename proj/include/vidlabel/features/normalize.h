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

#ifndef VIDLABEL_FEATURES_NORMALIZE_H_
#define VIDLABEL_FEATURES_NORMALIZE_H_

#include <string>
#include <string_view>
#include <vector>

#include "vidlabel/features/video_features.h"

namespace vidlabel::features {

enum class FeatureField { kMean, kStd, kX3 };
enum class NormalizeMode { kOff, kGlobalL2 };

std::string_view FieldName(FeatureField field);
FeatureField ParseField(std::string_view name);
std::string_view ModeName(NormalizeMode mode);
NormalizeMode ParseMode(std::string_view name);

inline constexpr double kMomentStdFloor = 1e-8;

// Per-dimension moments of one feature block over the training rows.
struct GlobalMoments {
  FeatureField field = FeatureField::kMean;
  std::vector<double> mean;
  std::vector<double> std;  // floored at kMomentStdFloor

  bool operator==(const GlobalMoments&) const = default;
};

const std::vector<double>& Block(const VideoFeatures& row, FeatureField field);
std::vector<double>& Block(VideoFeatures& row, FeatureField field);

GlobalMoments FitGlobalMoments(const std::vector<VideoFeatures>& rows, FeatureField field);

// kOff returns the row untouched. kGlobalL2 standardizes the block selected by
// gm.field and rescales it to unit L2 norm; a zero vector stays zero.
VideoFeatures Normalize(const VideoFeatures& row, const GlobalMoments& gm,
                        NormalizeMode mode);

// Moments for all three blocks.
struct NormalizationStats {
  std::vector<GlobalMoments> blocks;
};

NormalizationStats FitNormalization(const std::vector<VideoFeatures>& rows);
VideoFeatures NormalizeRow(const VideoFeatures& row, const NormalizationStats& stats,
                           NormalizeMode mode);

std::string StatsToJson(const NormalizationStats& stats);
NormalizationStats StatsFromJson(const std::string& text);

}  // namespace vidlabel::features

#endif  // VIDLABEL_FEATURES_NORMALIZE_H_
