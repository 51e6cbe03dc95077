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

#include "vidlabel/nncore/init.h"

#include <algorithm>
#include <cmath>

#include "vidlabel/common/random.h"

namespace vidlabel::nncore {

void InitTensor(Tensor& tensor, std::uint64_t seed) {
  if (tensor.shape.size() != 2) {
    std::fill(tensor.values.begin(), tensor.values.end(), 0.0);
    return;
  }
  const double fan_in = static_cast<double>(tensor.shape[0]);
  const double fan_out = static_cast<double>(tensor.shape[1]);
  const double limit = std::sqrt(6.0 / (fan_in + fan_out));
  Rng rng(DeriveSeed(seed, tensor.name));
  for (double& v : tensor.values) v = (2.0 * UniformUnit(rng) - 1.0) * limit;
}

void InitStore(ParameterStore& store, std::uint64_t seed) {
  for (auto& t : store.tensors()) InitTensor(t, seed);
}

}  // namespace vidlabel::nncore
