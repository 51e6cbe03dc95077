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

#include "support/fixtures.h"

#include <atomic>
#include <fstream>
#include <random>
#include <sstream>
#include <unistd.h>

namespace vidlabel::testing {

namespace fs = std::filesystem;

TempDir::TempDir(const std::string& tag) {
  static std::atomic<int> counter{0};
  path_ = fs::temp_directory_path() /
          (tag + "_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
  fs::remove_all(path_);
  fs::create_directories(path_);
}

TempDir::~TempDir() {
  std::error_code ec;
  fs::remove_all(path_, ec);
}

dataio::FrameRecord RandomRecord(Rng& rng, const std::string& id, std::vector<int> labels,
                                 int frames, int dim) {
  std::normal_distribution<double> noise(0.0, 1.0);
  dataio::FrameRecord r;
  r.id = id;
  r.labels = std::move(labels);
  r.dim = dim;
  r.data.resize(static_cast<std::size_t>(frames) * static_cast<std::size_t>(dim));
  for (double& v : r.data) v = noise(rng);
  return r;
}

void Randomize(nncore::ParameterStore& store, std::uint64_t seed, double scale) {
  Rng rng(seed);
  for (auto& t : store.tensors()) {
    for (double& v : t.values) v = (2.0 * UniformUnit(rng) - 1.0) * scale;
  }
}

nncore::Matrix RandomMatrix(Rng& rng, int rows, int cols, double scale) {
  nncore::Matrix m(rows, cols);
  for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = (2.0 * UniformUnit(rng) - 1.0) * scale;
  return m;
}

std::string ReadText(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void WriteText(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream(path, std::ios::binary) << text;
}

}  // namespace vidlabel::testing
