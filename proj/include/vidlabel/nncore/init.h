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

#ifndef VIDLABEL_NNCORE_INIT_H_
#define VIDLABEL_NNCORE_INIT_H_

#include <cstdint>

#include "vidlabel/nncore/parameter_store.h"

namespace vidlabel::nncore {

// Glorot-uniform for 2-D tensors, zeros for 1-D. Each tensor draws from its
// own stream seeded by (seed, name), so adding a tensor never reshuffles the
// others.
void InitTensor(Tensor& tensor, std::uint64_t seed);
void InitStore(ParameterStore& store, std::uint64_t seed);

}  // namespace vidlabel::nncore

#endif  // VIDLABEL_NNCORE_INIT_H_
