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

#include "vidlabel/cli/config.h"

#include <algorithm>

#include "vidlabel/common/errors.h"
#include "vidlabel/common/fs.h"

namespace vidlabel::cli {

using nlohmann::json;

void RequireKnownKeys(const json& j, std::initializer_list<const char*> keys,
                      const std::string& what) {
  if (!j.is_object()) throw ConfigError(what + " must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (std::none_of(keys.begin(), keys.end(), [&](const char* k) { return key == k; })) {
      throw ConfigError(what + ": unknown key '" + key + "'");
    }
  }
}

json LoadJsonFile(const std::filesystem::path& path) {
  try {
    return json::parse(ReadFile(path));
  } catch (const json::parse_error& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

dataio::SyntheticParams SyntheticParamsFromJson(const json& j, dataio::SyntheticParams p) {
  RequireKnownKeys(j,
                   {"seed", "videos", "vocab", "rgb_dim", "audio_dim", "topics", "min_frames",
                    "max_frames", "max_frames_cap", "shards", "holdout", "centroid_scale"},
                   "synth");
  try {
    p.seed = j.value("seed", p.seed);
    p.num_videos = j.value("videos", p.num_videos);
    p.vocab_size = j.value("vocab", p.vocab_size);
    p.rgb_dim = j.value("rgb_dim", p.rgb_dim);
    p.audio_dim = j.value("audio_dim", p.audio_dim);
    p.num_topics = j.value("topics", p.num_topics);
    p.min_frames = j.value("min_frames", p.min_frames);
    p.max_frames = j.value("max_frames", p.max_frames);
    p.max_frames_cap = j.value("max_frames_cap", p.max_frames_cap);
    p.num_shards = j.value("shards", p.num_shards);
    p.holdout_videos = j.value("holdout", p.holdout_videos);
    p.centroid_scale = j.value("centroid_scale", p.centroid_scale);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("synth: ") + e.what());
  }
  return p;
}

nlohmann::ordered_json SyntheticParamsToJson(const dataio::SyntheticParams& p) {
  nlohmann::ordered_json j;
  j["seed"] = p.seed;
  j["videos"] = p.num_videos;
  j["vocab"] = p.vocab_size;
  j["rgb_dim"] = p.rgb_dim;
  j["audio_dim"] = p.audio_dim;
  j["topics"] = p.num_topics;
  j["min_frames"] = p.min_frames;
  j["max_frames"] = p.max_frames;
  j["max_frames_cap"] = p.max_frames_cap;
  j["shards"] = p.num_shards;
  j["holdout"] = p.holdout_videos;
  j["centroid_scale"] = p.centroid_scale;
  return j;
}

features::FeaturizeOptions FeaturizeOptionsFromJson(const json& j) {
  RequireKnownKeys(j, {"normalize", "augment"}, "featurize");
  features::FeaturizeOptions o;
  try {
    if (j.contains("normalize")) o.mode = features::ParseMode(j.at("normalize").get<std::string>());
    o.augment = j.value("augment", o.augment);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("featurize: ") + e.what());
  }
  return o;
}

}  // namespace vidlabel::cli
