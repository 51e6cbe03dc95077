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

#include "vidlabel/evalens/baseline.h"

#include "vidlabel/common/errors.h"

namespace vidlabel::evalens {

std::vector<double> LabelFrequencies(const GroundTruth& truth, int vocab_size) {
  if (truth.empty()) throw ArgumentError("label frequencies of an empty truth set");
  std::vector<double> freq(static_cast<std::size_t>(vocab_size), 0.0);
  for (const auto& [id, labels] : truth) {
    for (int v : labels) {
      if (v < 0 || v >= vocab_size) throw ArgumentError("label outside vocabulary");
      freq[static_cast<std::size_t>(v)] += 1.0;
    }
  }
  for (double& f : freq) f /= static_cast<double>(truth.size());
  return freq;
}

PredictionSet FrequencyBaseline(const std::vector<double>& frequencies, const GroundTruth& videos,
                                int top_k) {
  const std::vector<LabelScore> ranked =
      TopK(frequencies.data(), static_cast<int>(frequencies.size()), top_k);
  PredictionSet set;
  set.tag = "frequency_baseline";
  for (const auto& [id, labels] : videos) set.videos[id] = ranked;
  return set;
}

}  // namespace vidlabel::evalens
