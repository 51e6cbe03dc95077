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

#ifndef VIDLABEL_EVALENS_BASELINE_H_
#define VIDLABEL_EVALENS_BASELINE_H_

#include <vector>

#include "vidlabel/evalens/predictions.h"

namespace vidlabel::evalens {

// Fraction of videos carrying each label.
std::vector<double> LabelFrequencies(const GroundTruth& truth, int vocab_size);

// Predicts the same top-k most frequent labels, scored by frequency, for
// every video of `videos`.
PredictionSet FrequencyBaseline(const std::vector<double>& frequencies, const GroundTruth& videos,
                                int top_k);

}  // namespace vidlabel::evalens

#endif  // VIDLABEL_EVALENS_BASELINE_H_
