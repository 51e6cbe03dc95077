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

#include "vidlabel/dataio/manifest.h"

#include <algorithm>

#include <json.hpp>

#include "vidlabel/common/errors.h"
#include "vidlabel/common/fs.h"

namespace vidlabel::dataio {

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

void ValidateManifest(const DatasetManifest& m) {
  if (m.vocab_size < 1) throw ConfigError("manifest V must be >= 1");
  if (m.rgb_dim < 0 || m.audio_dim < 0 || m.dim() < 1) {
    throw ConfigError("manifest feature dimensions must be >= 1 in total");
  }
  if (m.max_frames < 1) throw ConfigError("manifest max_frames must be >= 1");
  if (m.shard_paths.empty()) throw ConfigError("manifest has no shards");
}

std::string ManifestToJson(const DatasetManifest& m) {
  ordered_json j;
  j["V"] = m.vocab_size;
  j["D_rgb"] = m.rgb_dim;
  j["D_audio"] = m.audio_dim;
  j["max_frames"] = m.max_frames;
  j["shard_paths"] = m.shard_paths;
  j["seed"] = m.seed;
  return j.dump(2) + "\n";
}

DatasetManifest ManifestFromJson(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("manifest: ") + e.what());
  }
  static const char* kKeys[] = {"V", "D_rgb", "D_audio", "max_frames", "shard_paths", "seed"};
  if (!j.is_object()) throw SchemaError("manifest must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (std::find(std::begin(kKeys), std::end(kKeys), key) == std::end(kKeys)) {
      throw SchemaError("manifest: unknown key '" + key + "'");
    }
  }
  DatasetManifest m;
  try {
    m.vocab_size = j.at("V").get<int>();
    m.rgb_dim = j.at("D_rgb").get<int>();
    m.audio_dim = j.at("D_audio").get<int>();
    m.max_frames = j.at("max_frames").get<int>();
    m.shard_paths = j.at("shard_paths").get<std::vector<std::string>>();
    m.seed = j.value("seed", std::uint64_t{0});
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError(std::string("manifest: ") + e.what());
  }
  ValidateManifest(m);
  return m;
}

DatasetManifest LoadManifest(const fs::path& dir) {
  return ManifestFromJson(ReadFile(dir / kManifestFile));
}

void SaveManifest(const fs::path& dir, const DatasetManifest& manifest) {
  ValidateManifest(manifest);
  WriteFileAtomic(dir / kManifestFile, ManifestToJson(manifest));
}

std::vector<fs::path> ResolveShards(const fs::path& dir, const DatasetManifest& manifest) {
  std::vector<fs::path> out;
  out.reserve(manifest.shard_paths.size());
  for (const auto& p : manifest.shard_paths) out.push_back(dir / p);
  return out;
}

}  // namespace vidlabel::dataio
