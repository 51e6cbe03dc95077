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

#ifndef VIDLABEL_CLI_CONFIG_H_
#define VIDLABEL_CLI_CONFIG_H_

#include <filesystem>
#include <initializer_list>
#include <string>

#include <json.hpp>

#include "vidlabel/dataio/synthetic.h"
#include "vidlabel/features/feature_io.h"

namespace vidlabel::cli {

// Throws ConfigError naming the first key of `j` not in `keys`.
void RequireKnownKeys(const nlohmann::json& j, std::initializer_list<const char*> keys,
                      const std::string& what);

nlohmann::json LoadJsonFile(const std::filesystem::path& path);

// Keys: seed, videos, vocab, rgb_dim, audio_dim, topics, min_frames,
// max_frames, max_frames_cap, shards, holdout, centroid_scale.
dataio::SyntheticParams SyntheticParamsFromJson(const nlohmann::json& j,
                                                dataio::SyntheticParams base = {});
nlohmann::ordered_json SyntheticParamsToJson(const dataio::SyntheticParams& p);

// Keys: normalize ("off" | "global_l2"), augment.
features::FeaturizeOptions FeaturizeOptionsFromJson(const nlohmann::json& j);

}  // namespace vidlabel::cli

#endif  // VIDLABEL_CLI_CONFIG_H_
