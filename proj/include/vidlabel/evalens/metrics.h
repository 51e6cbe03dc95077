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

#ifndef VIDLABEL_EVALENS_METRICS_H_
#define VIDLABEL_EVALENS_METRICS_H_

#include <string>
#include <vector>

#include "vidlabel/evalens/predictions.h"

namespace vidlabel::evalens {

struct GapOptions {
  // Caps each video's contribution to the positive count; 0 means no cap.
  int max_positives_per_video = 0;
};

// Global average precision over the flattened list of (video, label)
// predictions, ranked by confidence with ties broken by video id and label.
// The recall denominator counts every ground-truth positive, including those
// of videos without predictions.
double Gap(const PredictionSet& preds, const GroundTruth& truth, const GapOptions& opts = {});

// Mean per-video cosine similarity of the top-k sparse prediction vectors.
// Videos where either vector is zero are skipped.
double Correlation(const PredictionSet& a, const PredictionSet& b, int k = 20);

// Pairwise Correlation with a unit diagonal; symmetric by construction.
std::vector<std::vector<double>> CorrelationMatrix(const std::vector<PredictionSet>& sets,
                                                   int k = 20);

}  // namespace vidlabel::evalens

#endif  // VIDLABEL_EVALENS_METRICS_H_
