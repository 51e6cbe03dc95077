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

#ifndef VIDLABEL_TRAIN_DATASET_H_
#define VIDLABEL_TRAIN_DATASET_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <vector>

#include "vidlabel/common/random.h"
#include "vidlabel/dataio/frame_record.h"
#include "vidlabel/dataio/manifest.h"
#include "vidlabel/evalens/predictions.h"
#include "vidlabel/features/video_features.h"
#include "vidlabel/models/model.h"

namespace vidlabel::train {

// A dataset in memory, grouped by shard: feature rows for video-level models,
// frame records for frame-level models.
struct Dataset {
  dataio::DatasetManifest manifest;
  models::InputKind kind = models::InputKind::kVideo;
  std::vector<std::vector<features::VideoFeatures>> rows;
  std::vector<std::vector<dataio::FrameRecord>> records;

  int num_shards() const;
  std::size_t shard_size(int shard) const;
  int input_dim() const { return manifest.rgb_dim + manifest.audio_dim; }
};

// Video-level models need a featurized directory, frame-level models the raw
// frame shards; the wrong kind is a ConfigError.
Dataset LoadDataset(const std::filesystem::path& dir, models::InputKind kind);

struct ItemRef {
  int shard = 0;
  int index = 0;
  bool operator==(const ItemRef&) const = default;
};

models::Batch MakeBatch(const Dataset& data, const std::vector<ItemRef>& items);

// One item per video: whole-video rows or frame records.
std::vector<ItemRef> VideoItems(const Dataset& data, const std::vector<int>& shards);
std::vector<ItemRef> AllItems(const Dataset& data, const std::vector<int>& shards);
std::vector<int> AllShards(const Dataset& data);

evalens::GroundTruth TruthOf(const Dataset& data, const std::vector<ItemRef>& items);

// Ranked top-k predictions of `items`, computed in fixed-size chunks.
evalens::PredictionSet PredictItems(const models::Model& model, const nncore::ParameterStore& params,
                                    const Dataset& data, const std::vector<ItemRef>& items,
                                    int top_k, int chunk = 256);

// Endless stream of training items: the shard order is reshuffled every epoch
// and items pass through a bounded shuffle buffer. Deterministic in the seed.
class ShuffledStream {
 public:
  static constexpr std::size_t kDefaultBuffer = 4096;

  ShuffledStream(const Dataset& data, std::vector<int> shards, std::uint64_t seed,
                 std::size_t buffer_size = kDefaultBuffer);

  ItemRef Next();
  // Emitted items divided by items per epoch.
  double epochs() const;

 private:
  void StartEpoch();

  const Dataset* data_;
  std::vector<int> shards_;
  std::size_t buffer_size_;
  std::size_t epoch_items_ = 0;
  Rng rng_;
  std::vector<int> order_;
  std::size_t shard_pos_ = 0;
  int item_pos_ = 0;
  std::vector<ItemRef> buffer_;
  std::int64_t emitted_ = 0;
};

}  // namespace vidlabel::train

#endif  // VIDLABEL_TRAIN_DATASET_H_
