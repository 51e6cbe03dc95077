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

#ifndef VIDLABEL_DATAIO_FRAME_RECORD_H_
#define VIDLABEL_DATAIO_FRAME_RECORD_H_

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace vidlabel::dataio {

// One video: identifier, label set and `num_frames() x dim` frame features
// stored row-major. The first D_rgb columns are visual, the rest audio.
struct FrameRecord {
  std::string id;
  std::vector<int> labels;  // sorted ascending, unique
  int dim = 0;
  std::vector<double> data;

  int num_frames() const {
    return dim == 0 ? 0 : static_cast<int>(data.size() / static_cast<std::size_t>(dim));
  }
  std::span<const double> frame(int t) const {
    return {data.data() + static_cast<std::size_t>(t) * dim,
            static_cast<std::size_t>(dim)};
  }

  bool operator==(const FrameRecord&) const = default;
};

// Limits a record is validated against.
struct RecordSchema {
  int vocab_size = 0;
  int dim = 0;
  int max_frames = 300;
};

// Throws SchemaError naming the violated invariant.
void ValidateRecord(const FrameRecord& record, const RecordSchema& schema);

}  // namespace vidlabel::dataio

#endif  // VIDLABEL_DATAIO_FRAME_RECORD_H_
