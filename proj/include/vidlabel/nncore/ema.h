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

#ifndef VIDLABEL_NNCORE_EMA_H_
#define VIDLABEL_NNCORE_EMA_H_

#include "vidlabel/nncore/parameter_store.h"

namespace vidlabel::nncore {

// Exponential moving average of a parameter store, parameterized by its
// half-life in steps.
struct EmaState {
  ParameterStore shadow;
  double half_life = 3000.0;

  double decay() const;
};

// Shadow starts as a copy of the target. Throws ConfigError unless
// half_life > 0.
EmaState StartEma(const ParameterStore& target, double half_life);

// shadow <- d shadow + (1 - d) target with d = 2^(-1/half_life), for every
// trainable tensor. The shadow's step follows the target.
void EmaUpdate(EmaState& ema, const ParameterStore& target);

}  // namespace vidlabel::nncore

#endif  // VIDLABEL_NNCORE_EMA_H_
