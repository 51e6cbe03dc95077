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

#include "vidlabel/nncore/ema.h"

#include <cmath>

#include "vidlabel/common/errors.h"

namespace vidlabel::nncore {

double EmaState::decay() const { return std::exp2(-1.0 / half_life); }

EmaState StartEma(const ParameterStore& target, double half_life) {
  if (!(half_life > 0.0)) throw ConfigError("EMA half-life must be > 0");
  return {target, half_life};
}

void EmaUpdate(EmaState& ema, const ParameterStore& target) {
  if (!ema.shadow.SameLayout(target)) throw ArgumentError("EMA shadow layout differs from target");
  const double d = ema.decay();
  auto& shadow = ema.shadow.tensors();
  for (std::size_t i = 0; i < shadow.size(); ++i) {
    if (!shadow[i].trainable) continue;
    auto& s = shadow[i].values;
    const auto& x = target.tensors()[i].values;
    for (std::size_t k = 0; k < s.size(); ++k) s[k] = d * s[k] + (1.0 - d) * x[k];
  }
  ema.shadow.set_step(target.step());
}

}  // namespace vidlabel::nncore
