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

#ifndef VIDLABEL_NNCORE_GRADIENT_CHECK_H_
#define VIDLABEL_NNCORE_GRADIENT_CHECK_H_

#include <functional>
#include <string>

#include "vidlabel/nncore/parameter_store.h"

namespace vidlabel::nncore {

// Returns the scalar loss at `params`. When `grads` is non-null it has the
// layout of `params`, is zeroed by the caller, and receives dLoss/dparams.
using LossClosure = std::function<double(const ParameterStore& params, ParameterStore* grads)>;

struct GradientCheckResult {
  double max_rel_error = 0.0;
  std::string worst_tensor;
  std::size_t worst_index = 0;
  double analytic = 0.0;
  double numeric = 0.0;
  std::size_t checked = 0;
};

// Central differences over every element of every trainable tensor:
//   rel = |g_a - g_fd| / max(|g_a|, |g_fd|, 1e-8).
GradientCheckResult GradientCheck(const LossClosure& loss, ParameterStore params,
                                  double h = 1e-5);

}  // namespace vidlabel::nncore

#endif  // VIDLABEL_NNCORE_GRADIENT_CHECK_H_
