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

#ifndef VIDLABEL_FEATURES_FEATURE_IO_H_
#define VIDLABEL_FEATURES_FEATURE_IO_H_

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "vidlabel/dataio/manifest.h"
#include "vidlabel/features/normalize.h"
#include "vidlabel/features/video_features.h"

namespace vidlabel::features {

// Marks a directory as holding feature rows rather than frame shards.
inline constexpr char kFeaturizeFile[] = "featurize.json";
inline constexpr char kMomentsFile[] = "global_moments.json";

// JSON lines {"id","segment","labels","mean","std","x3","num_frames"}.
std::string EncodeRow(const VideoFeatures& row);
std::vector<VideoFeatures> ParseRows(const std::string& text, int vocab_size, int dim,
                                     const std::string& source = "<memory>");
void WriteRows(const std::filesystem::path& path, const std::vector<VideoFeatures>& rows);
std::vector<VideoFeatures> ReadRows(const std::filesystem::path& path, int vocab_size,
                                    int dim);

struct FeaturizeOptions {
  NormalizeMode mode = NormalizeMode::kOff;
  // Reuse moments fitted elsewhere (e.g. apply training moments to a
  // holdout set). Fitted on the input when absent.
  std::optional<std::filesystem::path> moments_in;
  bool augment = true;
};

struct FeaturizeSummary {
  int videos = 0;
  int rows = 0;
  int single_frame_videos = 0;
};

// Converts every shard of `in_dir` into a feature-row file of `out_dir`,
// keeping shard order so fold assignment carries over.
FeaturizeSummary FeaturizeDataset(const std::filesystem::path& in_dir,
                                  const std::filesystem::path& out_dir,
                                  const FeaturizeOptions& options);

bool IsFeatureDir(const std::filesystem::path& dir);

// Rows grouped per shard, in manifest order.
std::vector<std::vector<VideoFeatures>> ReadFeatureDataset(
    const std::filesystem::path& dir, const dataio::DatasetManifest& manifest);

}  // namespace vidlabel::features

#endif  // VIDLABEL_FEATURES_FEATURE_IO_H_
