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

#ifndef VIDLABEL_NNCORE_DENSE_H_
#define VIDLABEL_NNCORE_DENSE_H_

#include <string>

#include "vidlabel/nncore/parameter_store.h"

namespace vidlabel::nncore {

enum class Activation { kLinear, kRelu, kSigmoid, kTanh, kSoftmax };

using ConstRowVectorRef = Eigen::Ref<const RowVector>;

double Sigmoid(double z);

// Elementwise activation; softmax normalizes each run of `group` adjacent
// columns (group 0 means the whole row).
Matrix Activate(const ConstMatrixRef& z, Activation act, int group = 0);

// dL/dz from dL/dy and the activation output y.
Matrix ActivationBackward(const ConstMatrixRef& dy, const ConstMatrixRef& y, Activation act,
                          int group = 0);

struct DenseCache {
  bool valid = false;
  Matrix x;
  Matrix y;
  Activation act = Activation::kLinear;
  int group = 0;
};

struct DenseGrads {
  Matrix dW;
  RowVector db;
  Matrix dx;
};

// y = act(x W + b). Throws ArgumentError on shape mismatch and NumericError
// on non-finite input. Fills `cache` for the backward pass when given.
Matrix DenseForward(const ConstMatrixRef& x, const ConstMatrixRef& w, const ConstRowVectorRef& b,
                    Activation act, int group = 0, DenseCache* cache = nullptr);

// Throws UsageError if `cache` was not filled by DenseForward.
DenseGrads DenseBackward(const ConstMatrixRef& upstream, const DenseCache& cache,
                         const ConstMatrixRef& w);

// A dense layer whose weights live in a ParameterStore under
// `<name>/W` (in x out) and `<name>/b` (out).
class DenseLayer {
 public:
  DenseLayer() = default;
  DenseLayer(std::string name, int in, int out, Activation act, int group = 0);

  void Declare(ParameterStore& store) const;
  Matrix Forward(const ParameterStore& params, const ConstMatrixRef& x,
                 DenseCache* cache = nullptr) const;
  // Accumulates dW and db into `grads` and returns dL/dx.
  Matrix Backward(const ParameterStore& params, const ConstMatrixRef& upstream,
                  const DenseCache& cache, ParameterStore& grads) const;

  const std::string& weight_name() const { return weight_; }
  const std::string& bias_name() const { return bias_; }
  int in() const { return in_; }
  int out() const { return out_; }

 private:
  std::string weight_;
  std::string bias_;
  int in_ = 0;
  int out_ = 0;
  Activation act_ = Activation::kLinear;
  int group_ = 0;
};

}  // namespace vidlabel::nncore

#endif  // VIDLABEL_NNCORE_DENSE_H_
