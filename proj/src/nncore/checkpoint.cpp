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

#include "vidlabel/nncore/checkpoint.h"

#include <bit>
#include <cstring>

#include "vidlabel/common/errors.h"
#include "vidlabel/common/fs.h"

namespace vidlabel::nncore {

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

namespace {

template <typename Word>
void AppendLittleEndian(std::string& out, Word w) {
  for (std::size_t i = 0; i < sizeof(Word); ++i) {
    out.push_back(static_cast<char>((w >> (8 * i)) & 0xff));
  }
}

template <typename Word>
Word ReadLittleEndian(const char* p) {
  Word w = 0;
  for (std::size_t i = 0; i < sizeof(Word); ++i) {
    w |= static_cast<Word>(static_cast<unsigned char>(p[i])) << (8 * i);
  }
  return w;
}

void AppendStore(std::string& out, const ParameterStore& store, Dtype dtype) {
  for (const auto& t : store.tensors()) {
    for (double v : t.values) {
      if (dtype == Dtype::kFloat64) {
        AppendLittleEndian(out, std::bit_cast<std::uint64_t>(v));
      } else {
        AppendLittleEndian(out, std::bit_cast<std::uint32_t>(static_cast<float>(v)));
      }
    }
  }
}

std::size_t ReadStore(const std::string& bytes, std::size_t pos, ParameterStore& store,
                      Dtype dtype) {
  const std::size_t width = dtype == Dtype::kFloat64 ? 8 : 4;
  for (auto& t : store.tensors()) {
    if (pos + t.values.size() * width > bytes.size()) {
      throw SchemaError("params.bin is shorter than the manifest describes");
    }
    for (double& v : t.values) {
      if (dtype == Dtype::kFloat64) {
        v = std::bit_cast<double>(ReadLittleEndian<std::uint64_t>(bytes.data() + pos));
      } else {
        v = std::bit_cast<float>(ReadLittleEndian<std::uint32_t>(bytes.data() + pos));
      }
      pos += width;
    }
  }
  return pos;
}

}  // namespace

void SaveCheckpoint(const fs::path& dir, const Checkpoint& ckpt) {
  if (ckpt.ema && !ckpt.ema->SameLayout(ckpt.snapshot)) {
    throw ArgumentError("EMA shadow layout differs from snapshot");
  }
  ordered_json manifest;
  manifest["format_version"] = kCheckpointFormatVersion;
  manifest["dtype"] = ckpt.dtype == Dtype::kFloat64 ? "float64" : "float32";
  manifest["step"] = ckpt.snapshot.step();
  manifest["ema"] = ckpt.ema.has_value();
  if (ckpt.ema) manifest["ema_half_life"] = ckpt.ema_half_life;
  ordered_json tensors = ordered_json::array();
  for (const auto& t : ckpt.snapshot.tensors()) {
    ordered_json e;
    e["name"] = t.name;
    e["shape"] = t.shape;
    e["trainable"] = t.trainable;
    tensors.push_back(std::move(e));
  }
  manifest["tensors"] = std::move(tensors);
  manifest["model"] = ckpt.model_config;

  std::string bin;
  bin.reserve(ckpt.snapshot.num_elements() * 8 * (ckpt.ema ? 2 : 1));
  AppendStore(bin, ckpt.snapshot, ckpt.dtype);
  if (ckpt.ema) AppendStore(bin, *ckpt.ema, ckpt.dtype);

  fs::path staged = dir;
  staged += ".staging";
  fs::remove_all(staged);
  fs::create_directories(staged);
  WriteFileAtomic(staged / "manifest.json", manifest.dump(2) + "\n");
  WriteFileAtomic(staged / "params.bin", bin);
  RenameDirAtomic(staged, dir);
}

Checkpoint LoadCheckpoint(const fs::path& dir) {
  const std::string text = ReadFile(dir / "manifest.json");
  Checkpoint ckpt;
  bool has_ema = false;
  try {
    const auto manifest = ordered_json::parse(text);
    if (manifest.at("format_version").get<int>() != kCheckpointFormatVersion) {
      throw SchemaError("unsupported checkpoint format_version in " + dir.string());
    }
    const auto dtype = manifest.at("dtype").get<std::string>();
    if (dtype == "float64") {
      ckpt.dtype = Dtype::kFloat64;
    } else if (dtype == "float32") {
      ckpt.dtype = Dtype::kFloat32;
    } else {
      throw SchemaError("unknown checkpoint dtype '" + dtype + "'");
    }
    ckpt.snapshot.set_step(manifest.at("step").get<std::int64_t>());
    has_ema = manifest.at("ema").get<bool>();
    if (has_ema) ckpt.ema_half_life = manifest.at("ema_half_life").get<double>();
    for (const auto& e : manifest.at("tensors")) {
      ckpt.snapshot.Add(e.at("name").get<std::string>(),
                        e.at("shape").get<std::vector<std::int64_t>>(),
                        e.at("trainable").get<bool>());
    }
    ckpt.model_config = manifest.at("model");
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError("checkpoint manifest " + dir.string() + ": " + e.what());
  } catch (const ArgumentError& e) {
    throw SchemaError("checkpoint manifest " + dir.string() + ": " + e.what());
  }

  const std::string bin = ReadFile(dir / "params.bin");
  std::size_t pos = ReadStore(bin, 0, ckpt.snapshot, ckpt.dtype);
  if (has_ema) {
    ParameterStore ema = ckpt.snapshot.ZerosLike();
    ema.set_step(ckpt.snapshot.step());
    pos = ReadStore(bin, pos, ema, ckpt.dtype);
    ckpt.ema = std::move(ema);
  }
  if (pos != bin.size()) throw SchemaError("params.bin has trailing bytes in " + dir.string());
  return ckpt;
}

}  // namespace vidlabel::nncore
