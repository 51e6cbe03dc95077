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

#ifndef VIDLABEL_NNCORE_CHECKPOINT_H_
#define VIDLABEL_NNCORE_CHECKPOINT_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include <json.hpp>

#include "vidlabel/nncore/parameter_store.h"

namespace vidlabel::nncore {

inline constexpr int kCheckpointFormatVersion = 1;

enum class Dtype { kFloat64, kFloat32 };

// A checkpoint directory holds manifest.json (tensor names and shapes, dtype,
// step, ema flag, format version, model config) and params.bin (the snapshot
// tensors, followed by the EMA tensors when present, concatenated in manifest
// order as little-endian values).
struct Checkpoint {
  ParameterStore snapshot;
  std::optional<ParameterStore> ema;
  double ema_half_life = 0.0;
  nlohmann::ordered_json model_config;
  Dtype dtype = Dtype::kFloat64;

  std::int64_t step() const { return snapshot.step(); }
};

// Writes into a staging directory and renames it into place.
void SaveCheckpoint(const std::filesystem::path& dir, const Checkpoint& checkpoint);

// Throws SchemaError on a malformed manifest or a params.bin of the wrong
// size.
Checkpoint LoadCheckpoint(const std::filesystem::path& dir);

}  // namespace vidlabel::nncore

#endif  // VIDLABEL_NNCORE_CHECKPOINT_H_
