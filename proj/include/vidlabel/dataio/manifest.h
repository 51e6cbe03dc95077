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

#ifndef VIDLABEL_DATAIO_MANIFEST_H_
#define VIDLABEL_DATAIO_MANIFEST_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "vidlabel/dataio/frame_record.h"

namespace vidlabel::dataio {

inline constexpr char kManifestFile[] = "manifest.json";

// Describes a sharded dataset directory. `shard_paths` are relative to the
// directory holding manifest.json.
struct DatasetManifest {
  int vocab_size = 0;  // "V"
  int rgb_dim = 0;     // "D_rgb"
  int audio_dim = 0;   // "D_audio"
  int max_frames = 300;
  std::vector<std::string> shard_paths;
  std::uint64_t seed = 0;

  int dim() const { return rgb_dim + audio_dim; }
  RecordSchema schema() const { return {vocab_size, dim(), max_frames}; }

  bool operator==(const DatasetManifest&) const = default;
};

void ValidateManifest(const DatasetManifest& manifest);

std::string ManifestToJson(const DatasetManifest& manifest);
DatasetManifest ManifestFromJson(const std::string& text);

// `dir`/manifest.json.
DatasetManifest LoadManifest(const std::filesystem::path& dir);
void SaveManifest(const std::filesystem::path& dir, const DatasetManifest& manifest);

std::vector<std::filesystem::path> ResolveShards(const std::filesystem::path& dir,
                                                 const DatasetManifest& manifest);

}  // namespace vidlabel::dataio

#endif  // VIDLABEL_DATAIO_MANIFEST_H_
