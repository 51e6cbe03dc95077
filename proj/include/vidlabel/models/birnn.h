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

#ifndef VIDLABEL_MODELS_BIRNN_H_
#define VIDLABEL_MODELS_BIRNN_H_

#include <string>
#include <vector>

#include "vidlabel/models/model.h"
#include "vidlabel/models/moe.h"
#include "vidlabel/models/rnn_cell.h"

namespace vidlabel::models {

// Time-major padded batch: steps[t] is B x D, row b valid while t < lengths[b].
struct PaddedFrames {
  std::vector<Matrix> steps;
  std::vector<int> lengths;
};

// Pads with zeros to the longest record, truncating at `max_frames`.
PaddedFrames PadRecords(const std::vector<const dataio::FrameRecord*>& records, int max_frames);

// Two-layer frame-level classifier. Layer 1 runs a forward and a backward
// cell over each sequence's valid steps; their per-step outputs are
// concatenated and fed to a single-direction layer 2. Layer 2's state at the
// last valid step (LSTM: memory cell by default; GRU: h) feeds an MoE head.
class BiRnnModel : public Model {
 public:
  struct State : ForwardState {
    std::vector<RnnCell::StepCache> fwd;
    std::vector<RnnCell::StepCache> bwd;
    std::vector<RnnCell::StepCache> top;
    Matrix readout;
    MoeHead::Cache head;
  };

  BiRnnModel(ModelSpec spec, const std::string& prefix);

  const ModelSpec& spec() const override { return spec_; }
  InputKind input_kind() const override { return InputKind::kFrame; }
  void Declare(ParameterStore& store) const override;
  ForwardResult Forward(const ParameterStore& params, const Batch& batch) const override;
  void Backward(const ParameterStore& params, const Batch& batch, const ForwardState& state,
                const Matrix& dprobs, ParameterStore& grads) const override;

  // Operates directly on a padded batch; returns the B x K fitted labels.
  Matrix ForwardPadded(const ParameterStore& params, const PaddedFrames& frames,
                       State* state) const;
  void BackwardPadded(const ParameterStore& params, const State& state, const Matrix& dfitted,
                      ParameterStore& grads) const;

  int readout_width() const;

 private:
  ModelSpec spec_;
  RnnCell fwd_;
  RnnCell bwd_;
  RnnCell top_;
  MoeHead head_;
};

}  // namespace vidlabel::models

#endif  // VIDLABEL_MODELS_BIRNN_H_
