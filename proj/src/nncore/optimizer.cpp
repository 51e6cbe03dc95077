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

#include "vidlabel/nncore/optimizer.h"

#include <cmath>
#include <string>

#include "vidlabel/common/errors.h"

namespace vidlabel::nncore {

void ValidateTrainConfig(const TrainConfig& c) {
  if (!(c.learning_rate > 0.0)) throw ConfigError("learning_rate must be > 0");
  if (c.batch_size < 1) throw ConfigError("batch_size must be >= 1");
  if (c.max_steps < 0) throw ConfigError("max_steps must be >= 0");
  if (c.checkpoint_every < 1) throw ConfigError("checkpoint_every must be >= 1");
  if (c.eval_every < 1) throw ConfigError("eval_every must be >= 1");
  if (!(c.lr_decay_rate > 0.0)) throw ConfigError("lr_decay_rate must be > 0");
  if (c.lr_decay_steps < 0) throw ConfigError("lr_decay_steps must be >= 0");
  if (!(c.adam_beta1 >= 0.0 && c.adam_beta1 < 1.0) ||
      !(c.adam_beta2 >= 0.0 && c.adam_beta2 < 1.0) || !(c.adam_epsilon > 0.0)) {
    throw ConfigError("adam betas must lie in [0, 1) and epsilon be > 0");
  }
}

double LearningRateAt(const TrainConfig& c, std::int64_t step) {
  if (c.lr_decay_steps <= 0 || c.lr_decay_rate == 1.0) return c.learning_rate;
  return c.learning_rate *
         std::pow(c.lr_decay_rate, static_cast<double>(step / c.lr_decay_steps));
}

AdamState AdamState::For(const ParameterStore& params) {
  return {params.ZerosLike(), params.ZerosLike()};
}

void OptimizerStep(ParameterStore& params, const ParameterStore& grads, AdamState& state,
                   const TrainConfig& c) {
  if (!params.SameLayout(grads) || !params.SameLayout(state.m) ||
      !params.SameLayout(state.v)) {
    throw ArgumentError("optimizer: gradients or state not aligned with parameters");
  }
  for (const auto& g : grads.tensors()) {
    for (double v : g.values) {
      if (!std::isfinite(v)) throw NumericError("non-finite gradient in '" + g.name + "'");
    }
  }
  const std::int64_t t = params.step() + 1;
  const double lr = LearningRateAt(c, params.step());
  const double b1 = c.adam_beta1;
  const double b2 = c.adam_beta2;
  const double lr_t = lr * std::sqrt(1.0 - std::pow(b2, static_cast<double>(t))) /
                      (1.0 - std::pow(b1, static_cast<double>(t)));
  auto& ps = params.tensors();
  for (std::size_t i = 0; i < ps.size(); ++i) {
    if (!ps[i].trainable) continue;
    auto& w = ps[i].values;
    const auto& g = grads.tensors()[i].values;
    auto& m = state.m.tensors()[i].values;
    auto& v = state.v.tensors()[i].values;
    for (std::size_t k = 0; k < w.size(); ++k) {
      m[k] = b1 * m[k] + (1.0 - b1) * g[k];
      v[k] = b2 * v[k] + (1.0 - b2) * g[k] * g[k];
      w[k] -= lr_t * m[k] / (std::sqrt(v[k]) + c.adam_epsilon);
    }
  }
  params.set_step(t);
}

}  // namespace vidlabel::nncore
