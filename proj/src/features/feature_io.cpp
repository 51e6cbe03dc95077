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

#include "vidlabel/features/feature_io.h"

#include <algorithm>
#include <cstdio>

#include <json.hpp>

#include "vidlabel/common/errors.h"
#include "vidlabel/common/fs.h"
#include "vidlabel/dataio/shard_io.h"

namespace vidlabel::features {

namespace fs = std::filesystem;
using nlohmann::json;
using ordered_json = nlohmann::ordered_json;

std::string EncodeRow(const VideoFeatures& row) {
  ordered_json j;
  j["id"] = row.id;
  j["segment"] = SegmentName(row.segment);
  j["labels"] = row.labels;
  j["mean"] = row.mean;
  j["std"] = row.std;
  j["x3"] = row.x3;
  j["num_frames"] = row.num_frames;
  return j.dump();
}

std::vector<VideoFeatures> ParseRows(const std::string& text, int vocab_size, int dim,
                                     const std::string& source) {
  std::vector<VideoFeatures> rows;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string::npos) end = text.size();
    std::string_view line(text.data() + pos, end - pos);
    if (line.find_first_not_of(" \t\r") != std::string_view::npos) {
      const std::string where =
          source + ": row " + std::to_string(rows.size()) + " at byte " + std::to_string(pos);
      VideoFeatures row;
      try {
        const json j = json::parse(line);
        row.id = j.at("id").get<std::string>();
        row.segment = ParseSegment(j.at("segment").get<std::string>());
        row.labels = j.at("labels").get<std::vector<int>>();
        row.mean = j.at("mean").get<std::vector<double>>();
        row.std = j.at("std").get<std::vector<double>>();
        row.x3 = j.at("x3").get<std::vector<double>>();
        row.num_frames = j.at("num_frames").get<int>();
      } catch (const json::exception& e) {
        throw ParseError(where + ": " + e.what());
      }
      const auto d = static_cast<std::size_t>(dim);
      if (row.mean.size() != d || row.std.size() != d || row.x3.size() != d) {
        throw SchemaError(where + ": feature blocks must have dimension " + std::to_string(dim));
      }
      if (row.num_frames < 1) throw SchemaError(where + ": num_frames must be >= 1");
      for (int label : row.labels) {
        if (label < 0 || label >= vocab_size) {
          throw SchemaError(where + ": label " + std::to_string(label) + " out of range");
        }
      }
      rows.push_back(std::move(row));
    }
    pos = end + 1;
  }
  return rows;
}

void WriteRows(const fs::path& path, const std::vector<VideoFeatures>& rows) {
  std::string out;
  for (const auto& r : rows) {
    out += EncodeRow(r);
    out += '\n';
  }
  WriteFileAtomic(path, out);
}

std::vector<VideoFeatures> ReadRows(const fs::path& path, int vocab_size, int dim) {
  return ParseRows(ReadFile(path), vocab_size, dim, path.string());
}

bool IsFeatureDir(const fs::path& dir) { return fs::exists(dir / kFeaturizeFile); }

FeaturizeSummary FeaturizeDataset(const fs::path& in_dir, const fs::path& out_dir,
                                  const FeaturizeOptions& options) {
  const dataio::DatasetManifest manifest = dataio::LoadManifest(in_dir);
  const auto shards = dataio::ReadDataset(in_dir, manifest);

  FeaturizeSummary summary;
  std::vector<std::vector<VideoFeatures>> rows(shards.size());
  for (std::size_t s = 0; s < shards.size(); ++s) {
    for (const auto& record : shards[s]) {
      ++summary.videos;
      if (record.num_frames() == 1) ++summary.single_frame_videos;
      if (options.augment) {
        for (auto& row : AugmentSplit(record)) rows[s].push_back(std::move(row));
      } else {
        rows[s].push_back(WholeVideo(record));
      }
    }
    summary.rows += static_cast<int>(rows[s].size());
  }

  fs::create_directories(out_dir);
  ordered_json info;
  info["normalize"] = ModeName(options.mode);
  info["augment"] = options.augment;
  if (options.mode == NormalizeMode::kGlobalL2) {
    NormalizationStats stats;
    if (options.moments_in) {
      fs::path src = *options.moments_in;
      if (fs::is_directory(src)) src /= kMomentsFile;
      stats = StatsFromJson(ReadFile(src));
    } else {
      std::vector<VideoFeatures> all;
      for (const auto& shard : rows) all.insert(all.end(), shard.begin(), shard.end());
      stats = FitNormalization(all);
    }
    for (auto& shard : rows) {
      for (auto& row : shard) row = NormalizeRow(row, stats, options.mode);
    }
    WriteFileAtomic(out_dir / kMomentsFile, StatsToJson(stats));
  }

  dataio::DatasetManifest out_manifest = manifest;
  out_manifest.shard_paths.clear();
  for (std::size_t s = 0; s < rows.size(); ++s) {
    char name[48];
    std::snprintf(name, sizeof(name), "features_%05zu.jsonl", s);
    WriteRows(out_dir / name, rows[s]);
    out_manifest.shard_paths.emplace_back(name);
  }
  dataio::SaveManifest(out_dir, out_manifest);
  if (fs::exists(in_dir / "truth.jsonl")) {
    fs::copy_file(in_dir / "truth.jsonl", out_dir / "truth.jsonl",
                  fs::copy_options::overwrite_existing);
  }
  WriteFileAtomic(out_dir / kFeaturizeFile, info.dump(2) + "\n");
  return summary;
}

std::vector<std::vector<VideoFeatures>> ReadFeatureDataset(
    const fs::path& dir, const dataio::DatasetManifest& manifest) {
  std::vector<std::vector<VideoFeatures>> out;
  for (const auto& path : dataio::ResolveShards(dir, manifest)) {
    out.push_back(ReadRows(path, manifest.vocab_size, manifest.dim()));
  }
  return out;
}

}  // namespace vidlabel::features
