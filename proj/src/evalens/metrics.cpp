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

#include "vidlabel/evalens/metrics.h"

#include <algorithm>
#include <cmath>
#include <map>

#include "vidlabel/common/errors.h"

namespace vidlabel::evalens {

namespace {

struct Entry {
  double confidence;
  const std::string* video;
  int label;
  bool hit;
};

}  // namespace

double Gap(const PredictionSet& preds, const GroundTruth& truth, const GapOptions& opts) {
  if (truth.empty()) throw ArgumentError("gap: ground truth is empty");
  if (opts.max_positives_per_video < 0) throw ArgumentError("gap: negative positive cap");
  double positives = 0.0;
  for (const auto& [id, labels] : truth) {
    std::size_t n = labels.size();
    if (opts.max_positives_per_video > 0) {
      n = std::min(n, static_cast<std::size_t>(opts.max_positives_per_video));
    }
    positives += static_cast<double>(n);
  }
  std::vector<Entry> entries;
  for (const auto& [id, scores] : preds.videos) {
    const auto it = truth.find(id);
    if (it == truth.end()) throw ArgumentError("gap: predicted video '" + id + "' not in truth");
    for (const auto& s : scores) {
      const bool hit = std::binary_search(it->second.begin(), it->second.end(), s.label);
      entries.push_back({s.confidence, &id, s.label, hit});
    }
  }
  if (positives == 0.0) return 0.0;
  std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
    if (a.confidence != b.confidence) return a.confidence > b.confidence;
    if (*a.video != *b.video) return *a.video < *b.video;
    return a.label < b.label;
  });
  double gap = 0.0;
  double hits = 0.0;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (!entries[i].hit) continue;
    hits += 1.0;
    gap += hits / static_cast<double>(i + 1);
  }
  return gap / positives;
}

double Correlation(const PredictionSet& a, const PredictionSet& b, int k) {
  if (k < 1) throw ArgumentError("correlation: k must be >= 1");
  double sum = 0.0;
  int shared = 0;
  int counted = 0;
  for (const auto& [id, sa] : a.videos) {
    const auto it = b.videos.find(id);
    if (it == b.videos.end()) continue;
    ++shared;
    const auto& sb = it->second;
    const std::size_t na = std::min(sa.size(), static_cast<std::size_t>(k));
    const std::size_t nb = std::min(sb.size(), static_cast<std::size_t>(k));
    std::map<int, double> va;
    double norm_a = 0.0, norm_b = 0.0, dot = 0.0;
    for (std::size_t i = 0; i < na; ++i) {
      va[sa[i].label] = sa[i].confidence;
      norm_a += sa[i].confidence * sa[i].confidence;
    }
    for (std::size_t i = 0; i < nb; ++i) {
      norm_b += sb[i].confidence * sb[i].confidence;
      const auto f = va.find(sb[i].label);
      if (f != va.end()) dot += f->second * sb[i].confidence;
    }
    if (norm_a == 0.0 || norm_b == 0.0) continue;
    sum += dot / (std::sqrt(norm_a) * std::sqrt(norm_b));
    ++counted;
  }
  if (shared == 0) throw ArgumentError("correlation: prediction sets share no video");
  return counted == 0 ? 0.0 : sum / counted;
}

std::vector<std::vector<double>> CorrelationMatrix(const std::vector<PredictionSet>& sets, int k) {
  if (sets.size() < 2) throw ArgumentError("correlation matrix needs at least 2 prediction sets");
  const std::size_t n = sets.size();
  std::vector<std::vector<double>> m(n, std::vector<double>(n, 1.0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      m[i][j] = m[j][i] = Correlation(sets[i], sets[j], k);
    }
  }
  return m;
}

}  // namespace vidlabel::evalens
