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

#ifndef VIDLABEL_DATAIO_SHARD_IO_H_
#define VIDLABEL_DATAIO_SHARD_IO_H_

#include <filesystem>
#include <string>
#include <vector>

#include "vidlabel/dataio/frame_record.h"
#include "vidlabel/dataio/manifest.h"

namespace vidlabel::dataio {

// One JSON object per line: {"id": ..., "labels": [...], "frames": [[...]]}.
// Doubles are written in shortest round-trip form, so a read after a write
// reproduces every feature bit-exactly.
std::string EncodeRecord(const FrameRecord& record);
std::string EncodeShard(const std::vector<FrameRecord>& records);
void WriteShard(const std::filesystem::path& path,
                const std::vector<FrameRecord>& records);

// Parses a shard and validates every record against `schema`. Malformed lines
// raise ParseError with the byte offset and record index; invariant
// violations raise SchemaError.
std::vector<FrameRecord> ParseShard(const std::string& text, const RecordSchema& schema,
                                    const std::string& source = "<memory>");
std::vector<FrameRecord> ReadShard(const std::filesystem::path& path,
                                   const RecordSchema& schema);

// All records of a dataset, grouped by shard in manifest order.
std::vector<std::vector<FrameRecord>> ReadDataset(const std::filesystem::path& dir,
                                                  const DatasetManifest& manifest);

// Ground-truth side file: one {"id": ..., "labels": [...]} per line.
void WriteTruthFile(const std::filesystem::path& path,
                    const std::vector<FrameRecord>& records);

// Writes a dataset directory (manifest.json + shards + truth.jsonl), putting
// record i into shard i mod num_shards. Fills manifest.shard_paths.
DatasetManifest WriteDataset(const std::filesystem::path& dir, DatasetManifest manifest,
                             const std::vector<FrameRecord>& records, int num_shards);

}  // namespace vidlabel::dataio

#endif  // VIDLABEL_DATAIO_SHARD_IO_H_
