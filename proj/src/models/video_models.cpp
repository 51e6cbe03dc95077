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

#include "vidlabel/models/video_models.h"

#include "vidlabel/common/errors.h"

namespace vidlabel::models {

using nncore::Activation;

Matrix PadLabels(const Matrix& fitted, int vocab_size) {
  if (fitted.cols() == vocab_size) return fitted;
  Matrix out = Matrix::Zero(fitted.rows(), vocab_size);
  out.leftCols(fitted.cols()) = fitted;
  return out;
}

MonnModel::MonnModel(ModelSpec spec, const std::string& prefix) : spec_(std::move(spec)) {
  ValidateSpec(spec_);
  int in = spec_.video_input_width();
  for (std::size_t i = 0; i < spec_.hidden.size(); ++i) {
    tower_.emplace_back(prefix + "tower" + std::to_string(i), in, spec_.hidden[i],
                        Activation::kRelu);
    in = spec_.hidden[i];
  }
  head_ = MoeHead(prefix, spec_.video_input_width(), in, spec_.fitted_labels(),
                  spec_.num_experts);
}

void MonnModel::Declare(ParameterStore& store) const {
  for (const auto& layer : tower_) layer.Declare(store);
  head_.Declare(store);
}

Matrix MonnModel::ForwardInput(const ParameterStore& params, const nncore::ConstMatrixRef& x,
                               State* state) const {
  State local;
  State& s = state != nullptr ? *state : local;
  s.input = x;
  s.tower.assign(tower_.size(), {});
  Matrix h = x;
  for (std::size_t i = 0; i < tower_.size(); ++i) h = tower_[i].Forward(params, h, &s.tower[i]);
  return head_.Forward(params, x, h, &s.head);
}

void MonnModel::BackwardInput(const ParameterStore& params, const State& state,
                              const Matrix& dfitted, ParameterStore& grads) const {
  auto [dgate_in, dh] = head_.Backward(params, dfitted, state.head, grads);
  for (std::size_t i = tower_.size(); i-- > 0;) {
    dh = tower_[i].Backward(params, dh, state.tower[i], grads);
  }
}

ForwardResult MonnModel::Forward(const ParameterStore& params, const Batch& batch) const {
  auto state = std::make_unique<State>();
  const Matrix x = AssembleVideoInput(batch.rows, spec_.input_features, spec_.input_dim);
  Matrix p = ForwardInput(params, x, state.get());
  return {PadLabels(p, spec_.vocab_size), std::move(state)};
}

void MonnModel::Backward(const ParameterStore& params, const Batch&, const ForwardState& state,
                         const Matrix& dprobs, ParameterStore& grads) const {
  const auto& s = dynamic_cast<const State&>(state);
  BackwardInput(params, s, dprobs.leftCols(spec_.fitted_labels()), grads);
}

LogisticModel::LogisticModel(ModelSpec spec, const std::string& prefix)
    : spec_(std::move(spec)),
      dense_(prefix + "logistic", spec_.video_input_width(), spec_.fitted_labels(),
             Activation::kSigmoid) {
  ValidateSpec(spec_);
}

void LogisticModel::Declare(ParameterStore& store) const { dense_.Declare(store); }

ForwardResult LogisticModel::Forward(const ParameterStore& params, const Batch& batch) const {
  auto state = std::make_unique<State>();
  const Matrix x = AssembleVideoInput(batch.rows, spec_.input_features, spec_.input_dim);
  Matrix p = dense_.Forward(params, x, &state->dense);
  return {PadLabels(p, spec_.vocab_size), std::move(state)};
}

void LogisticModel::Backward(const ParameterStore& params, const Batch&,
                             const ForwardState& state, const Matrix& dprobs,
                             ParameterStore& grads) const {
  const auto& s = dynamic_cast<const State&>(state);
  dense_.Backward(params, dprobs.leftCols(spec_.fitted_labels()), s.dense, grads);
}

}  // namespace vidlabel::models
