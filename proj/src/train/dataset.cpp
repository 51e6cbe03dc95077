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

#include "vidlabel/train/dataset.h"

#include <algorithm>

#include "vidlabel/common/errors.h"
#include "vidlabel/dataio/shard_io.h"
#include "vidlabel/features/feature_io.h"

namespace vidlabel::train {

namespace fs = std::filesystem;

int Dataset::num_shards() const {
  return static_cast<int>(kind == models::InputKind::kVideo ? rows.size() : records.size());
}

std::size_t Dataset::shard_size(int shard) const {
  const auto s = static_cast<std::size_t>(shard);
  return kind == models::InputKind::kVideo ? rows.at(s).size() : records.at(s).size();
}

Dataset LoadDataset(const fs::path& dir, models::InputKind kind) {
  Dataset data;
  data.kind = kind;
  data.manifest = dataio::LoadManifest(dir);
  const bool featurized = features::IsFeatureDir(dir);
  if (kind == models::InputKind::kVideo) {
    if (!featurized) {
      throw ConfigError(dir.string() + " holds frame shards; video-level models need featurized data");
    }
    data.rows = features::ReadFeatureDataset(dir, data.manifest);
  } else {
    if (featurized) {
      throw ConfigError(dir.string() + " holds feature rows; frame-level models need frame shards");
    }
    data.records = dataio::ReadDataset(dir, data.manifest);
  }
  return data;
}

models::Batch MakeBatch(const Dataset& data, const std::vector<ItemRef>& items) {
  const int v = data.manifest.vocab_size;
  if (data.kind == models::InputKind::kVideo) {
    std::vector<const features::VideoFeatures*> rows;
    rows.reserve(items.size());
    for (const auto& it : items) {
      rows.push_back(&data.rows.at(static_cast<std::size_t>(it.shard)).at(static_cast<std::size_t>(it.index)));
    }
    return models::MakeVideoBatch(std::move(rows), v);
  }
  std::vector<const dataio::FrameRecord*> records;
  records.reserve(items.size());
  for (const auto& it : items) {
    records.push_back(&data.records.at(static_cast<std::size_t>(it.shard)).at(static_cast<std::size_t>(it.index)));
  }
  return models::MakeFrameBatch(std::move(records), v);
}

std::vector<ItemRef> AllItems(const Dataset& data, const std::vector<int>& shards) {
  std::vector<ItemRef> items;
  for (int s : shards) {
    for (std::size_t i = 0; i < data.shard_size(s); ++i) items.push_back({s, static_cast<int>(i)});
  }
  return items;
}

std::vector<ItemRef> VideoItems(const Dataset& data, const std::vector<int>& shards) {
  if (data.kind == models::InputKind::kFrame) return AllItems(data, shards);
  std::vector<ItemRef> items;
  for (int s : shards) {
    const auto& rows = data.rows.at(static_cast<std::size_t>(s));
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].segment == features::Segment::kWhole) items.push_back({s, static_cast<int>(i)});
    }
  }
  return items;
}

std::vector<int> AllShards(const Dataset& data) {
  std::vector<int> shards(static_cast<std::size_t>(data.num_shards()));
  for (int s = 0; s < data.num_shards(); ++s) shards[static_cast<std::size_t>(s)] = s;
  return shards;
}

evalens::GroundTruth TruthOf(const Dataset& data, const std::vector<ItemRef>& items) {
  evalens::GroundTruth truth;
  for (const auto& it : items) {
    const auto s = static_cast<std::size_t>(it.shard);
    const auto i = static_cast<std::size_t>(it.index);
    if (data.kind == models::InputKind::kVideo) {
      truth[data.rows.at(s).at(i).id] = data.rows[s][i].labels;
    } else {
      truth[data.records.at(s).at(i).id] = data.records[s][i].labels;
    }
  }
  return truth;
}

evalens::PredictionSet PredictItems(const models::Model& model, const nncore::ParameterStore& params,
                                    const Dataset& data, const std::vector<ItemRef>& items,
                                    int top_k, int chunk) {
  if (top_k < 1) throw ConfigError("top_k must be >= 1");
  evalens::PredictionSet set;
  for (std::size_t begin = 0; begin < items.size(); begin += static_cast<std::size_t>(chunk)) {
    const std::size_t end = std::min(items.size(), begin + static_cast<std::size_t>(chunk));
    const std::vector<ItemRef> part(items.begin() + static_cast<std::ptrdiff_t>(begin),
                                    items.begin() + static_cast<std::ptrdiff_t>(end));
    const models::Batch batch = MakeBatch(data, part);
    const nncore::Matrix probs = model.Predict(params, batch);
    for (std::size_t r = 0; r < part.size(); ++r) {
      const std::string& id = batch.rows.empty() ? batch.records[r]->id : batch.rows[r]->id;
      set.videos[id] = evalens::TopK(probs.row(static_cast<Eigen::Index>(r)).data(),
                                     static_cast<int>(probs.cols()), top_k);
    }
  }
  return set;
}

ShuffledStream::ShuffledStream(const Dataset& data, std::vector<int> shards, std::uint64_t seed,
                               std::size_t buffer_size)
    : data_(&data), shards_(std::move(shards)), buffer_size_(buffer_size), rng_(seed) {
  if (buffer_size_ < 1) throw ConfigError("shuffle buffer must hold at least one item");
  for (int s : shards_) epoch_items_ += data.shard_size(s);
  if (epoch_items_ == 0) throw ConfigError("no training items in the train-role shards");
  StartEpoch();
}

void ShuffledStream::StartEpoch() {
  order_ = shards_;
  for (std::size_t i = order_.size(); i > 1; --i) {
    std::swap(order_[i - 1], order_[UniformIndex(rng_, i)]);
  }
  shard_pos_ = 0;
  item_pos_ = 0;
}

ItemRef ShuffledStream::Next() {
  auto source_empty = [&] { return shard_pos_ >= order_.size(); };
  if (buffer_.empty() && source_empty()) StartEpoch();
  while (buffer_.size() < buffer_size_ && !source_empty()) {
    const int s = order_[shard_pos_];
    if (static_cast<std::size_t>(item_pos_) >= data_->shard_size(s)) {
      ++shard_pos_;
      item_pos_ = 0;
      continue;
    }
    buffer_.push_back({s, item_pos_++});
  }
  if (buffer_.empty()) return Next();  // only empty shards were left
  const std::size_t j = UniformIndex(rng_, buffer_.size());
  const ItemRef out = buffer_[j];
  buffer_[j] = buffer_.back();
  buffer_.pop_back();
  ++emitted_;
  return out;
}

double ShuffledStream::epochs() const {
  return static_cast<double>(emitted_) / static_cast<double>(epoch_items_);
}

}  // namespace vidlabel::train
