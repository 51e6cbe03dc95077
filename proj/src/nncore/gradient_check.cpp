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

#include "vidlabel/nncore/gradient_check.h"

#include <algorithm>
#include <cmath>

namespace vidlabel::nncore {

GradientCheckResult GradientCheck(const LossClosure& loss, ParameterStore params, double h) {
  ParameterStore grads = params.ZerosLike();
  loss(params, &grads);

  GradientCheckResult result;
  auto& tensors = params.tensors();
  for (std::size_t i = 0; i < tensors.size(); ++i) {
    if (!tensors[i].trainable) continue;
    auto& values = tensors[i].values;
    for (std::size_t k = 0; k < values.size(); ++k) {
      const double saved = values[k];
      values[k] = saved + h;
      const double up = loss(params, nullptr);
      values[k] = saved - h;
      const double down = loss(params, nullptr);
      values[k] = saved;

      const double numeric = (up - down) / (2.0 * h);
      const double analytic = grads.tensors()[i].values[k];
      const double rel = std::abs(analytic - numeric) /
                         std::max({std::abs(analytic), std::abs(numeric), 1e-8});
      ++result.checked;
      if (rel > result.max_rel_error || result.checked == 1) {
        result.max_rel_error = rel;
        result.worst_tensor = tensors[i].name;
        result.worst_index = k;
        result.analytic = analytic;
        result.numeric = numeric;
      }
    }
  }
  return result;
}

}  // namespace vidlabel::nncore
