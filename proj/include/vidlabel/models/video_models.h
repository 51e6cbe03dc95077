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

#ifndef VIDLABEL_MODELS_VIDEO_MODELS_H_
#define VIDLABEL_MODELS_VIDEO_MODELS_H_

#include <string>
#include <vector>

#include "vidlabel/models/model.h"
#include "vidlabel/models/moe.h"

namespace vidlabel::models {

// Widens B x K fitted-label probabilities to B x V with zero columns.
Matrix PadLabels(const Matrix& fitted, int vocab_size);

// Mixture of neural-network experts: a shared relu tower feeds the expert
// side of an MoE head, while the gate is a single affine layer on the raw
// input.
class MonnModel : public Model {
 public:
  struct State : ForwardState {
    Matrix input;
    std::vector<nncore::DenseCache> tower;
    MoeHead::Cache head;
  };

  MonnModel(ModelSpec spec, const std::string& prefix);

  const ModelSpec& spec() const override { return spec_; }
  InputKind input_kind() const override { return InputKind::kVideo; }
  void Declare(ParameterStore& store) const override;
  ForwardResult Forward(const ParameterStore& params, const Batch& batch) const override;
  void Backward(const ParameterStore& params, const Batch& batch, const ForwardState& state,
                const Matrix& dprobs, ParameterStore& grads) const override;

  // Operate on an assembled B x video_input_width() matrix; outputs are the
  // B x K fitted labels.
  Matrix ForwardInput(const ParameterStore& params, const nncore::ConstMatrixRef& x,
                      State* state) const;
  void BackwardInput(const ParameterStore& params, const State& state,
                     const Matrix& dfitted, ParameterStore& grads) const;

 private:
  ModelSpec spec_;
  std::vector<nncore::DenseLayer> tower_;
  MoeHead head_;
};

// One sigmoid layer on the video-level input.
class LogisticModel : public Model {
 public:
  struct State : ForwardState {
    nncore::DenseCache dense;
  };

  LogisticModel(ModelSpec spec, const std::string& prefix);

  const ModelSpec& spec() const override { return spec_; }
  InputKind input_kind() const override { return InputKind::kVideo; }
  void Declare(ParameterStore& store) const override;
  ForwardResult Forward(const ParameterStore& params, const Batch& batch) const override;
  void Backward(const ParameterStore& params, const Batch& batch, const ForwardState& state,
                const Matrix& dprobs, ParameterStore& grads) const override;

 private:
  ModelSpec spec_;
  nncore::DenseLayer dense_;
};

}  // namespace vidlabel::models

#endif  // VIDLABEL_MODELS_VIDEO_MODELS_H_
