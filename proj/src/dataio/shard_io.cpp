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

#include "vidlabel/dataio/shard_io.h"

#include <algorithm>
#include <cstdio>
#include <set>

#include <json.hpp>

#include "vidlabel/common/errors.h"
#include "vidlabel/common/fs.h"

namespace vidlabel::dataio {

namespace fs = std::filesystem;
using nlohmann::json;
using ordered_json = nlohmann::ordered_json;

std::string EncodeRecord(const FrameRecord& record) {
  ordered_json j;
  j["id"] = record.id;
  j["labels"] = record.labels;
  ordered_json frames = ordered_json::array();
  for (int t = 0; t < record.num_frames(); ++t) {
    auto f = record.frame(t);
    frames.push_back(std::vector<double>(f.begin(), f.end()));
  }
  j["frames"] = std::move(frames);
  return j.dump();
}

std::string EncodeShard(const std::vector<FrameRecord>& records) {
  std::string out;
  for (const auto& r : records) {
    out += EncodeRecord(r);
    out += '\n';
  }
  return out;
}

void WriteShard(const fs::path& path, const std::vector<FrameRecord>& records) {
  WriteFileAtomic(path, EncodeShard(records));
}

namespace {

std::string Where(const std::string& source, std::size_t index, std::size_t offset) {
  return source + ": record " + std::to_string(index) + " at byte " + std::to_string(offset);
}

FrameRecord DecodeRecord(const std::string_view line, const std::string& where) {
  json j;
  try {
    j = json::parse(line);
  } catch (const json::parse_error& e) {
    throw ParseError(where + " (+" + std::to_string(e.byte) + "): " + e.what());
  }
  FrameRecord r;
  try {
    if (!j.is_object()) throw ParseError(where + ": expected a JSON object");
    r.id = j.at("id").get<std::string>();
    r.labels = j.at("labels").get<std::vector<int>>();
    const json& frames = j.at("frames");
    if (!frames.is_array()) throw ParseError(where + ": 'frames' must be an array");
    for (const json& f : frames) {
      if (!f.is_array()) throw ParseError(where + ": frame must be an array");
      if (r.dim == 0) r.dim = static_cast<int>(f.size());
      if (static_cast<int>(f.size()) != r.dim) {
        throw SchemaError(where + ": frame dimensions differ within record '" + r.id + "'");
      }
      for (const json& v : f) {
        if (!v.is_number()) throw ParseError(where + ": non-numeric feature");
        r.data.push_back(v.get<double>());
      }
    }
  } catch (const json::exception& e) {
    throw ParseError(where + ": " + e.what());
  }
  std::sort(r.labels.begin(), r.labels.end());
  r.labels.erase(std::unique(r.labels.begin(), r.labels.end()), r.labels.end());
  return r;
}

}  // namespace

std::vector<FrameRecord> ParseShard(const std::string& text, const RecordSchema& schema,
                                    const std::string& source) {
  std::vector<FrameRecord> out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string::npos) end = text.size();
    std::string_view line(text.data() + pos, end - pos);
    if (line.find_first_not_of(" \t\r") != std::string_view::npos) {
      const std::string where = Where(source, out.size(), pos);
      FrameRecord r = DecodeRecord(line, where);
      try {
        ValidateRecord(r, schema);
      } catch (const SchemaError& e) {
        throw SchemaError(where + ": " + e.what());
      }
      out.push_back(std::move(r));
    }
    pos = end + 1;
  }
  return out;
}

std::vector<FrameRecord> ReadShard(const fs::path& path, const RecordSchema& schema) {
  return ParseShard(ReadFile(path), schema, path.string());
}

std::vector<std::vector<FrameRecord>> ReadDataset(const fs::path& dir,
                                                  const DatasetManifest& manifest) {
  std::vector<std::vector<FrameRecord>> shards;
  std::set<std::string> ids;
  for (const auto& path : ResolveShards(dir, manifest)) {
    shards.push_back(ReadShard(path, manifest.schema()));
    for (const auto& r : shards.back()) {
      if (!ids.insert(r.id).second) {
        throw SchemaError("duplicate video id '" + r.id + "' in " + path.string());
      }
    }
  }
  return shards;
}

void WriteTruthFile(const fs::path& path, const std::vector<FrameRecord>& records) {
  std::string out;
  for (const auto& r : records) {
    ordered_json j;
    j["id"] = r.id;
    j["labels"] = r.labels;
    out += j.dump();
    out += '\n';
  }
  WriteFileAtomic(path, out);
}

DatasetManifest WriteDataset(const fs::path& dir, DatasetManifest manifest,
                             const std::vector<FrameRecord>& records, int num_shards) {
  if (num_shards < 1) throw ConfigError("num_shards must be >= 1");
  std::vector<std::vector<FrameRecord>> shards(static_cast<std::size_t>(num_shards));
  for (std::size_t i = 0; i < records.size(); ++i) {
    ValidateRecord(records[i], manifest.schema());
    shards[i % shards.size()].push_back(records[i]);
  }
  fs::create_directories(dir);
  manifest.shard_paths.clear();
  for (int s = 0; s < num_shards; ++s) {
    char name[48];
    std::snprintf(name, sizeof(name), "shard_%05d.jsonl", s);
    WriteShard(dir / name, shards[static_cast<std::size_t>(s)]);
    manifest.shard_paths.emplace_back(name);
  }
  WriteTruthFile(dir / "truth.jsonl", records);
  SaveManifest(dir, manifest);
  return manifest;
}

}  // namespace vidlabel::dataio
