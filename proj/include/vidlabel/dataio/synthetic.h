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

#ifndef VIDLABEL_DATAIO_SYNTHETIC_H_
#define VIDLABEL_DATAIO_SYNTHETIC_H_

#include <cstdint>
#include <filesystem>
#include <vector>

#include "vidlabel/dataio/frame_record.h"
#include "vidlabel/dataio/manifest.h"

namespace vidlabel::dataio {

// Fixed generator constants.
inline constexpr double kFrameNoiseSigma = 0.5;
inline constexpr double kLabelFlipProbability = 0.01;
inline constexpr int kMinTopicsPerVideo = 1;
inline constexpr int kMaxTopicsPerVideo = 3;

struct SyntheticParams {
  std::uint64_t seed = 0;
  int num_videos = 0;
  int vocab_size = 0;
  int rgb_dim = 32;
  int audio_dim = 8;
  int num_topics = 0;
  int min_frames = 10;
  int max_frames = 30;
  int max_frames_cap = 300;
  int num_shards = 1;
  // Extra videos drawn from the same topic model and written to
  // `<out>/holdout`. Zero disables the holdout set.
  int holdout_videos = 0;
  // Standard deviation of topic centroid coordinates.
  double centroid_scale = 0.25;
};

// Throws ConfigError on invalid counts.
void ValidateSyntheticParams(const SyntheticParams& params);

// Latent structure shared by the training and holdout videos.
struct TopicModel {
  std::vector<std::vector<double>> centroids;  // num_topics x dim
  std::vector<std::vector<int>> labels;        // labels owned by each topic
  std::vector<double> weights;                 // topic sampling weights (sum 1)
};

TopicModel MakeTopicModel(const SyntheticParams& params);

struct SyntheticData {
  TopicModel topics;
  std::vector<FrameRecord> train;
  std::vector<FrameRecord> holdout;
};

// Draws the whole dataset in memory. Deterministic in `params`.
SyntheticData GenerateSyntheticRecords(const SyntheticParams& params);

// Writes `out_dir` (and `out_dir/holdout` when requested) and returns the
// training manifest.
DatasetManifest GenerateSynthetic(const SyntheticParams& params,
                                  const std::filesystem::path& out_dir);

}  // namespace vidlabel::dataio

#endif  // VIDLABEL_DATAIO_SYNTHETIC_H_
