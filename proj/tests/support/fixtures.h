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

#ifndef VIDLABEL_TESTS_SUPPORT_FIXTURES_H_
#define VIDLABEL_TESTS_SUPPORT_FIXTURES_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "vidlabel/common/random.h"
#include "vidlabel/dataio/frame_record.h"
#include "vidlabel/nncore/parameter_store.h"

namespace vidlabel::testing {

// A fresh directory removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag = "vidlabel");
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

// Record with `frames` frames of width `dim` filled with N(0, 1) noise.
dataio::FrameRecord RandomRecord(Rng& rng, const std::string& id, std::vector<int> labels,
                                 int frames, int dim);

// Fills every tensor with uniform values in [-scale, scale].
void Randomize(nncore::ParameterStore& store, std::uint64_t seed, double scale);

nncore::Matrix RandomMatrix(Rng& rng, int rows, int cols, double scale = 1.0);

std::string ReadText(const std::filesystem::path& path);
void WriteText(const std::filesystem::path& path, const std::string& text);

}  // namespace vidlabel::testing

#endif  // VIDLABEL_TESTS_SUPPORT_FIXTURES_H_
