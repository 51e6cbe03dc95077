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

#ifndef VIDLABEL_NNCORE_OPTIMIZER_H_
#define VIDLABEL_NNCORE_OPTIMIZER_H_

#include <cstdint>

#include "vidlabel/nncore/parameter_store.h"

namespace vidlabel::nncore {

struct TrainConfig {
  double learning_rate = 0.00025;
  int batch_size = 256;
  std::uint64_t seed = 0;
  std::int64_t max_steps = 1000;
  std::int64_t checkpoint_every = 1000;
  std::int64_t eval_every = 50;
  // Staircase decay: lr * decay_rate^floor(step / decay_steps). A rate of 1
  // (or decay_steps 0) disables it.
  double lr_decay_rate = 1.0;
  std::int64_t lr_decay_steps = 0;
  double adam_beta1 = 0.9;
  double adam_beta2 = 0.999;
  double adam_epsilon = 1e-8;
};

// Throws ConfigError on non-positive fields.
void ValidateTrainConfig(const TrainConfig& config);

double LearningRateAt(const TrainConfig& config, std::int64_t step);

// First and second moment estimates, aligned with the parameter store.
struct AdamState {
  ParameterStore m;
  ParameterStore v;

  static AdamState For(const ParameterStore& params);
};

// One bias-corrected Adam update of every trainable tensor:
//   m <- b1 m + (1-b1) g,  v <- b2 v + (1-b2) g^2,
//   lr_t = lr sqrt(1-b2^t) / (1-b1^t),  w <- w - lr_t m / (sqrt(v) + eps).
// Increments the store's step. Throws NumericError naming the first tensor
// holding a non-finite gradient, before anything is modified.
void OptimizerStep(ParameterStore& params, const ParameterStore& grads, AdamState& state,
                   const TrainConfig& config);

}  // namespace vidlabel::nncore

#endif  // VIDLABEL_NNCORE_OPTIMIZER_H_
