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

#include "vidlabel/dataio/frame_record.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "vidlabel/common/errors.h"

namespace vidlabel::dataio {

void ValidateRecord(const FrameRecord& record, const RecordSchema& schema) {
  const std::string who = "record '" + record.id + "': ";
  if (record.dim != schema.dim) {
    throw SchemaError(who + "frame dimension " + std::to_string(record.dim) +
                      " != " + std::to_string(schema.dim));
  }
  if (record.dim <= 0 || record.data.size() % static_cast<std::size_t>(record.dim) != 0) {
    throw SchemaError(who + "ragged frame block");
  }
  const int n = record.num_frames();
  if (n < 1) throw SchemaError(who + "no frames");
  if (n > schema.max_frames) {
    throw SchemaError(who + std::to_string(n) + " frames exceeds max_frames " +
                      std::to_string(schema.max_frames));
  }
  for (std::size_t i = 0; i < record.labels.size(); ++i) {
    const int label = record.labels[i];
    if (label < 0 || label >= schema.vocab_size) {
      throw SchemaError(who + "label " + std::to_string(label) + " outside [0, " +
                        std::to_string(schema.vocab_size) + ")");
    }
    if (i > 0 && record.labels[i - 1] >= label) {
      throw SchemaError(who + "labels not strictly ascending");
    }
  }
  if (!std::all_of(record.data.begin(), record.data.end(),
                   [](double v) { return std::isfinite(v); })) {
    throw SchemaError(who + "non-finite feature value");
  }
}

}  // namespace vidlabel::dataio
