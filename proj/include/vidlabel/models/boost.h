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

#ifndef VIDLABEL_MODELS_BOOST_H_
#define VIDLABEL_MODELS_BOOST_H_

#include <memory>
#include <string>

#include "vidlabel/models/model.h"
#include "vidlabel/nncore/dense.h"

namespace vidlabel::models {

// clamp(base + correction, 0, 1) elementwise.
Matrix BoostCombine(const nncore::ConstMatrixRef& base, const nncore::ConstMatrixRef& correction);

// A frozen base model plus a correction network (one relu hidden layer and a
// tanh output) fitted with an L2 loss to the residual y - p_base. The base
// receives no gradient; its tensors are stored under "base/" and frozen.
class BoostedModel : public Model {
 public:
  struct State : ForwardState {
    Matrix base_probs;  // B x K
    Matrix sum;         // base + correction before clamping
    nncore::DenseCache hidden;
    nncore::DenseCache out;
  };

  BoostedModel(ModelSpec spec, const std::string& prefix);

  const ModelSpec& spec() const override { return spec_; }
  InputKind input_kind() const override { return InputKind::kVideo; }
  void Declare(ParameterStore& store) const override;
  // Loads the base weights from spec.base_checkpoint when set.
  ParameterStore Initialize(std::uint64_t seed) const override;
  ForwardResult Forward(const ParameterStore& params, const Batch& batch) const override;
  void Backward(const ParameterStore& params, const Batch& batch, const ForwardState& state,
                const Matrix& dprobs, ParameterStore& grads) const override;
  double LossAndGradient(const ParameterStore& params, const Batch& batch,
                         ParameterStore* grads) const override;

  // B x K correction in (-1, 1).
  Matrix Correction(const ParameterStore& params, const Batch& batch, State* state) const;
  const Model& base() const { return *base_; }

 private:
  ModelSpec spec_;
  std::string base_prefix_;
  std::unique_ptr<Model> base_;
  nncore::DenseLayer hidden_;
  nncore::DenseLayer out_;
};

}  // namespace vidlabel::models

#endif  // VIDLABEL_MODELS_BOOST_H_
