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

#include "vidlabel/dataio/synthetic.h"

#include <algorithm>
#include <cstdio>
#include <random>
#include <string>

#include "vidlabel/common/errors.h"
#include "vidlabel/common/random.h"
#include "vidlabel/dataio/shard_io.h"

namespace vidlabel::dataio {

namespace fs = std::filesystem;

void ValidateSyntheticParams(const SyntheticParams& p) {
  auto require = [](bool ok, const char* what) {
    if (!ok) throw ConfigError(std::string("synthetic: ") + what);
  };
  require(p.num_videos >= 1, "num_videos must be >= 1");
  require(p.vocab_size >= 1, "V must be >= 1");
  require(p.rgb_dim >= 1, "D_rgb must be >= 1");
  require(p.audio_dim >= 1, "D_audio must be >= 1");
  require(p.num_topics >= 1, "num_topics must be >= 1");
  require(p.num_shards >= 1, "num_shards must be >= 1");
  require(p.max_frames_cap >= 1, "max_frames must be >= 1");
  require(p.min_frames >= 1 && p.min_frames <= p.max_frames &&
              p.max_frames <= p.max_frames_cap,
          "frames_range must lie within [1, max_frames]");
  require(p.holdout_videos >= 0, "holdout_videos must be >= 0");
  require(p.centroid_scale > 0.0, "centroid_scale must be > 0");
}

TopicModel MakeTopicModel(const SyntheticParams& p) {
  Rng rng(DeriveSeed(p.seed, "topics"));
  std::normal_distribution<double> centroid(0.0, p.centroid_scale);
  const int dim = p.rgb_dim + p.audio_dim;
  TopicModel model;
  double total = 0.0;
  for (int t = 0; t < p.num_topics; ++t) {
    std::vector<double> c(static_cast<std::size_t>(dim));
    for (double& v : c) v = centroid(rng);
    model.centroids.push_back(std::move(c));

    // 2..4 labels per topic, sampled without replacement; topics may share.
    std::vector<int> pool(static_cast<std::size_t>(p.vocab_size));
    for (int v = 0; v < p.vocab_size; ++v) pool[static_cast<std::size_t>(v)] = v;
    const int want = std::min(p.vocab_size, 2 + static_cast<int>(UniformIndex(rng, 3)));
    std::vector<int> labels;
    for (int k = 0; k < want; ++k) {
      const auto j = k + UniformIndex(rng, pool.size() - static_cast<std::size_t>(k));
      std::swap(pool[static_cast<std::size_t>(k)], pool[j]);
      labels.push_back(pool[static_cast<std::size_t>(k)]);
    }
    std::sort(labels.begin(), labels.end());
    model.labels.push_back(std::move(labels));

    // Zipf popularity so that label frequencies are skewed.
    model.weights.push_back(1.0 / (t + 1));
    total += model.weights.back();
  }
  for (double& w : model.weights) w /= total;

  // Renumber labels by descending expected frequency so that, as in a real
  // label vocabulary, the first K indices are the K most frequent labels.
  std::vector<double> mass(static_cast<std::size_t>(p.vocab_size), 0.0);
  for (std::size_t t = 0; t < model.labels.size(); ++t) {
    for (int v : model.labels[t]) mass[static_cast<std::size_t>(v)] += model.weights[t];
  }
  std::vector<int> order(static_cast<std::size_t>(p.vocab_size));
  for (int v = 0; v < p.vocab_size; ++v) order[static_cast<std::size_t>(v)] = v;
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return mass[static_cast<std::size_t>(a)] > mass[static_cast<std::size_t>(b)];
  });
  std::vector<int> rank(order.size());
  for (std::size_t r = 0; r < order.size(); ++r) rank[static_cast<std::size_t>(order[r])] = static_cast<int>(r);
  for (auto& labels : model.labels) {
    for (int& v : labels) v = rank[static_cast<std::size_t>(v)];
    std::sort(labels.begin(), labels.end());
  }
  return model;
}

namespace {

std::vector<int> SampleTopics(Rng& rng, const TopicModel& model) {
  const int num_topics = static_cast<int>(model.weights.size());
  const int k = std::min(
      num_topics, kMinTopicsPerVideo +
                      static_cast<int>(UniformIndex(
                          rng, kMaxTopicsPerVideo - kMinTopicsPerVideo + 1)));
  std::vector<double> w = model.weights;
  std::vector<int> chosen;
  for (int i = 0; i < k; ++i) {
    double total = 0.0;
    for (double x : w) total += x;
    double u = UniformUnit(rng) * total;
    int pick = num_topics - 1;
    for (int t = 0; t < num_topics; ++t) {
      if (w[static_cast<std::size_t>(t)] <= 0.0) continue;
      if (u < w[static_cast<std::size_t>(t)]) {
        pick = t;
        break;
      }
      u -= w[static_cast<std::size_t>(t)];
    }
    while (w[static_cast<std::size_t>(pick)] <= 0.0) --pick;
    chosen.push_back(pick);
    w[static_cast<std::size_t>(pick)] = 0.0;
  }
  std::sort(chosen.begin(), chosen.end());
  return chosen;
}

std::vector<FrameRecord> DrawVideos(const SyntheticParams& p, const TopicModel& model,
                                    int count, const char* stream, const char* prefix) {
  Rng rng(DeriveSeed(p.seed, stream));
  std::normal_distribution<double> noise(0.0, kFrameNoiseSigma);
  const int dim = p.rgb_dim + p.audio_dim;
  std::vector<FrameRecord> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    const std::vector<int> topics = SampleTopics(rng, model);
    const int n = p.min_frames +
                  static_cast<int>(UniformIndex(
                      rng, static_cast<std::uint64_t>(p.max_frames - p.min_frames + 1)));

    std::vector<double> center(static_cast<std::size_t>(dim), 0.0);
    std::vector<bool> has(static_cast<std::size_t>(p.vocab_size), false);
    for (int t : topics) {
      const auto& c = model.centroids[static_cast<std::size_t>(t)];
      for (int d = 0; d < dim; ++d) center[static_cast<std::size_t>(d)] += c[static_cast<std::size_t>(d)];
      for (int v : model.labels[static_cast<std::size_t>(t)]) has[static_cast<std::size_t>(v)] = true;
    }
    for (double& c : center) c /= static_cast<double>(topics.size());
    for (int v = 0; v < p.vocab_size; ++v) {
      if (UniformUnit(rng) < kLabelFlipProbability) {
        has[static_cast<std::size_t>(v)] = !has[static_cast<std::size_t>(v)];
      }
    }

    FrameRecord r;
    char id[32];
    std::snprintf(id, sizeof(id), "%s%06d", prefix, i);
    r.id = id;
    r.dim = dim;
    for (int v = 0; v < p.vocab_size; ++v) {
      if (has[static_cast<std::size_t>(v)]) r.labels.push_back(v);
    }
    r.data.resize(static_cast<std::size_t>(n) * static_cast<std::size_t>(dim));
    for (int t = 0; t < n; ++t) {
      for (int d = 0; d < dim; ++d) {
        r.data[static_cast<std::size_t>(t) * dim + d] = center[static_cast<std::size_t>(d)] + noise(rng);
      }
    }
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace

SyntheticData GenerateSyntheticRecords(const SyntheticParams& p) {
  ValidateSyntheticParams(p);
  SyntheticData data;
  data.topics = MakeTopicModel(p);
  data.train = DrawVideos(p, data.topics, p.num_videos, "train", "vid");
  if (p.holdout_videos > 0) {
    data.holdout = DrawVideos(p, data.topics, p.holdout_videos, "holdout", "hold");
  }
  return data;
}

DatasetManifest GenerateSynthetic(const SyntheticParams& p, const fs::path& out_dir) {
  SyntheticData data = GenerateSyntheticRecords(p);
  DatasetManifest manifest;
  manifest.vocab_size = p.vocab_size;
  manifest.rgb_dim = p.rgb_dim;
  manifest.audio_dim = p.audio_dim;
  manifest.max_frames = p.max_frames_cap;
  manifest.seed = p.seed;
  DatasetManifest train = WriteDataset(out_dir, manifest, data.train, p.num_shards);
  if (!data.holdout.empty()) {
    const int holdout_shards = std::max(1, std::min(p.num_shards, p.holdout_videos));
    WriteDataset(out_dir / "holdout", manifest, data.holdout, holdout_shards);
  }
  return train;
}

}  // namespace vidlabel::dataio
