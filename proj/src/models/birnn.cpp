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

#include "vidlabel/models/birnn.h"

#include <algorithm>

#include "vidlabel/common/errors.h"
#include "vidlabel/models/video_models.h"

namespace vidlabel::models {

PaddedFrames PadRecords(const std::vector<const dataio::FrameRecord*>& records, int max_frames) {
  PaddedFrames out;
  if (records.empty()) return out;
  const int dim = records.front()->dim;
  int t_max = 0;
  for (const auto* r : records) {
    const int n = std::min(r->num_frames(), max_frames);
    out.lengths.push_back(n);
    t_max = std::max(t_max, n);
  }
  const auto batch = static_cast<Eigen::Index>(records.size());
  out.steps.assign(static_cast<std::size_t>(t_max), Matrix::Zero(batch, dim));
  for (Eigen::Index b = 0; b < batch; ++b) {
    const auto* r = records[static_cast<std::size_t>(b)];
    for (int t = 0; t < out.lengths[static_cast<std::size_t>(b)]; ++t) {
      const auto f = r->frame(t);
      for (int d = 0; d < dim; ++d) out.steps[static_cast<std::size_t>(t)](b, d) = f[d];
    }
  }
  return out;
}

BiRnnModel::BiRnnModel(ModelSpec spec, const std::string& prefix) : spec_(std::move(spec)) {
  ValidateSpec(spec_);
  const int u1 = spec_.layer1_units;
  const int u2 = spec_.layer2_units;
  fwd_ = RnnCell(prefix + "rnn1_fw", spec_.cell, spec_.input_dim, u1, spec_.forget_bias);
  bwd_ = RnnCell(prefix + "rnn1_bw", spec_.cell, spec_.input_dim, u1, spec_.forget_bias);
  top_ = RnnCell(prefix + "rnn2", spec_.cell, 2 * u1, u2, spec_.forget_bias);
  head_ = MoeHead(prefix + "moe_", readout_width(), readout_width(), spec_.fitted_labels(),
                  spec_.num_experts);
}

int BiRnnModel::readout_width() const {
  if (spec_.cell == CellType::kLstm && spec_.readout == LstmReadout::kBoth) {
    return 2 * spec_.layer2_units;
  }
  return spec_.layer2_units;
}

void BiRnnModel::Declare(ParameterStore& store) const {
  fwd_.Declare(store);
  bwd_.Declare(store);
  top_.Declare(store);
  head_.Declare(store);
}

Matrix BiRnnModel::ForwardPadded(const ParameterStore& params, const PaddedFrames& frames,
                                 State* state) const {
  State local;
  State& s = state != nullptr ? *state : local;
  const auto& lengths = frames.lengths;
  const auto batch = static_cast<Eigen::Index>(lengths.size());
  const int steps = static_cast<int>(frames.steps.size());
  if (batch == 0) throw ArgumentError("birnn: empty batch");
  for (int n : lengths) {
    if (n < 1) throw ArgumentError("birnn: zero-length sequence");
    if (n > steps) throw ArgumentError("birnn: length exceeds padded steps");
  }
  if (steps > spec_.max_frames) throw ArgumentError("birnn: more steps than max_frames");

  auto active_at = [&](int t) {
    std::vector<char> a(lengths.size());
    for (std::size_t b = 0; b < lengths.size(); ++b) a[b] = t < lengths[b] ? 1 : 0;
    return a;
  };

  const int u1 = spec_.layer1_units;
  s.fwd.assign(static_cast<std::size_t>(steps), {});
  s.bwd.assign(static_cast<std::size_t>(steps), {});
  s.top.assign(static_cast<std::size_t>(steps), {});
  std::vector<Matrix> layer1(static_cast<std::size_t>(steps), Matrix(batch, 2 * u1));

  RnnCell::State st = fwd_.ZeroState(batch);
  for (int t = 0; t < steps; ++t) {
    st = fwd_.Step(params, frames.steps[t], st, active_at(t), &s.fwd[t]);
    layer1[t].leftCols(u1) = st.h;
  }
  st = bwd_.ZeroState(batch);
  for (int t = steps - 1; t >= 0; --t) {
    st = bwd_.Step(params, frames.steps[t], st, active_at(t), &s.bwd[t]);
    layer1[t].rightCols(u1) = st.h;
  }
  st = top_.ZeroState(batch);
  for (int t = 0; t < steps; ++t) {
    st = top_.Step(params, layer1[t], st, active_at(t), &s.top[t]);
  }

  if (spec_.cell == CellType::kGru || spec_.readout == LstmReadout::kHidden) {
    s.readout = st.h;
  } else if (spec_.readout == LstmReadout::kCell) {
    s.readout = st.c;
  } else {
    s.readout.resize(batch, readout_width());
    s.readout << st.c, st.h;
  }
  return head_.Forward(params, s.readout, s.readout, &s.head);
}

void BiRnnModel::BackwardPadded(const ParameterStore& params, const State& s,
                                const Matrix& dfitted, ParameterStore& grads) const {
  auto [dg, de] = head_.Backward(params, dfitted, s.head, grads);
  const Matrix dreadout = dg + de;
  const auto batch = dreadout.rows();
  const int steps = static_cast<int>(s.top.size());
  const int u1 = spec_.layer1_units;
  const int u2 = spec_.layer2_units;

  RnnCell::State d = top_.ZeroState(batch);
  if (spec_.cell == CellType::kGru || spec_.readout == LstmReadout::kHidden) {
    d.h = dreadout;
  } else if (spec_.readout == LstmReadout::kCell) {
    d.c = dreadout;
  } else {
    d.c = dreadout.leftCols(u2);
    d.h = dreadout.rightCols(u2);
  }

  std::vector<Matrix> dlayer1(static_cast<std::size_t>(steps));
  for (int t = steps - 1; t >= 0; --t) {
    auto g = top_.StepBackward(params, s.top[t], d, grads);
    dlayer1[t] = std::move(g.dx);
    d = std::move(g.dprev);
  }

  d = fwd_.ZeroState(batch);
  for (int t = steps - 1; t >= 0; --t) {
    d.h += dlayer1[t].leftCols(u1);
    d = fwd_.StepBackward(params, s.fwd[t], d, grads).dprev;
  }
  d = bwd_.ZeroState(batch);
  for (int t = 0; t < steps; ++t) {
    d.h += dlayer1[t].rightCols(u1);
    d = bwd_.StepBackward(params, s.bwd[t], d, grads).dprev;
  }
}

ForwardResult BiRnnModel::Forward(const ParameterStore& params, const Batch& batch) const {
  auto state = std::make_unique<State>();
  const PaddedFrames frames = PadRecords(batch.records, spec_.max_frames);
  Matrix p = ForwardPadded(params, frames, state.get());
  return {PadLabels(p, spec_.vocab_size), std::move(state)};
}

void BiRnnModel::Backward(const ParameterStore& params, const Batch&, const ForwardState& state,
                          const Matrix& dprobs, ParameterStore& grads) const {
  BackwardPadded(params, dynamic_cast<const State&>(state),
                 dprobs.leftCols(spec_.fitted_labels()), grads);
}

}  // namespace vidlabel::models
