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

#ifndef VIDLABEL_MODELS_MODEL_H_
#define VIDLABEL_MODELS_MODEL_H_

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "vidlabel/dataio/frame_record.h"
#include "vidlabel/features/video_features.h"
#include "vidlabel/models/model_spec.h"
#include "vidlabel/nncore/parameter_store.h"

namespace vidlabel::models {

using nncore::Matrix;
using nncore::ParameterStore;

enum class InputKind { kVideo, kFrame };

// A training or inference batch. Video-level models read `rows`, frame-level
// models read `records`; `labels` is the B x V 0/1 target matrix.
struct Batch {
  std::vector<const features::VideoFeatures*> rows;
  std::vector<const dataio::FrameRecord*> records;
  Matrix labels;

  int size() const {
    return static_cast<int>(rows.empty() ? records.size() : rows.size());
  }
};

Matrix LabelMatrix(const std::vector<const std::vector<int>*>& label_sets, int vocab_size);
Batch MakeVideoBatch(std::vector<const features::VideoFeatures*> rows, int vocab_size);
Batch MakeFrameBatch(std::vector<const dataio::FrameRecord*> records, int vocab_size);

// Concatenates the requested blocks of each row into a B x width matrix.
Matrix AssembleVideoInput(const std::vector<const features::VideoFeatures*>& rows,
                          const std::vector<FeatureBlock>& blocks, int dim);

// Per-model intermediate values kept between Forward and Backward.
class ForwardState {
 public:
  virtual ~ForwardState() = default;
};

struct ForwardResult {
  Matrix probs;  // B x V
  std::unique_ptr<ForwardState> state;
};

class Model {
 public:
  virtual ~Model() = default;

  virtual const ModelSpec& spec() const = 0;
  virtual InputKind input_kind() const = 0;

  // Adds every tensor with its final shape (values zero).
  virtual void Declare(ParameterStore& store) const = 0;
  // Declared store plus seeded initial values.
  virtual ParameterStore Initialize(std::uint64_t seed) const;

  virtual ForwardResult Forward(const ParameterStore& params, const Batch& batch) const = 0;
  // Accumulates dLoss/dparams into `grads` given dLoss/dprobs.
  virtual void Backward(const ParameterStore& params, const Batch& batch,
                        const ForwardState& state, const Matrix& dprobs,
                        ParameterStore& grads) const = 0;

  // Training objective. Default: multilabel cross-entropy on the output
  // probabilities of the fitted labels. `grads` may be null.
  virtual double LossAndGradient(const ParameterStore& params, const Batch& batch,
                                 ParameterStore* grads) const;

  Matrix Predict(const ParameterStore& params, const Batch& batch) const {
    return Forward(params, batch).probs;
  }
};

// `prefix` is prepended to every tensor name.
std::unique_ptr<Model> BuildModel(const ModelSpec& spec, const std::string& prefix = "");

}  // namespace vidlabel::models

#endif  // VIDLABEL_MODELS_MODEL_H_
