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

#ifndef VIDLABEL_MODELS_MOE_H_
#define VIDLABEL_MODELS_MOE_H_

#include <string>
#include <utility>

#include "vidlabel/nncore/dense.h"

namespace vidlabel::models {

using nncore::Matrix;
using nncore::ParameterStore;

// Mixture-of-experts classifier over `labels` outputs. Per label v the gate
// is an affine layer followed by a softmax over E+1 entries (the last one a
// null expert contributing 0); the experts are an affine layer followed by a
// sigmoid; p_v = sum_e gate_{v,e} sigmoid_{v,e}. Column v*(E+1)+e of the gate
// and v*E+e of the experts belong to label v.
class MoeHead {
 public:
  struct Cache {
    nncore::DenseCache gate;
    nncore::DenseCache expert;
  };

  MoeHead() = default;
  MoeHead(const std::string& prefix, int gate_in, int expert_in, int labels, int experts);

  void Declare(ParameterStore& store) const;
  Matrix Forward(const ParameterStore& params, const nncore::ConstMatrixRef& gate_in,
                 const nncore::ConstMatrixRef& expert_in, Cache* cache) const;
  // Returns (dL/d gate_in, dL/d expert_in).
  std::pair<Matrix, Matrix> Backward(const ParameterStore& params, const Matrix& dprobs,
                                     const Cache& cache, ParameterStore& grads) const;

  int labels() const { return labels_; }
  int experts() const { return experts_; }

 private:
  nncore::DenseLayer gate_;
  nncore::DenseLayer expert_;
  int labels_ = 0;
  int experts_ = 0;
};

}  // namespace vidlabel::models

#endif  // VIDLABEL_MODELS_MOE_H_
