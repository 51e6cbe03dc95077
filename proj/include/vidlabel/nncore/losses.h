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

#ifndef VIDLABEL_NNCORE_LOSSES_H_
#define VIDLABEL_NNCORE_LOSSES_H_

#include "vidlabel/nncore/dense.h"

namespace vidlabel::nncore {

inline constexpr double kProbabilityClamp = 1e-12;

struct LossResult {
  double loss = 0.0;
  Matrix grad;  // dL/dp
};

// -sum[y log p + (1-y) log(1-p)] / B with p clamped to [eps, 1-eps].
LossResult CrossEntropyMultilabel(const ConstMatrixRef& p, const ConstMatrixRef& y);

// sum (p - t)^2 / (2B).
LossResult L2Loss(const ConstMatrixRef& p, const ConstMatrixRef& target);

}  // namespace vidlabel::nncore

#endif  // VIDLABEL_NNCORE_LOSSES_H_
