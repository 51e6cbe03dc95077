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

#include "vidlabel/models/boost.h"

#include "vidlabel/common/errors.h"
#include "vidlabel/models/video_models.h"
#include "vidlabel/nncore/checkpoint.h"
#include "vidlabel/nncore/init.h"
#include "vidlabel/nncore/losses.h"

namespace vidlabel::models {

using nncore::Activation;

Matrix BoostCombine(const nncore::ConstMatrixRef& base, const nncore::ConstMatrixRef& correction) {
  if (base.rows() != correction.rows() || base.cols() != correction.cols()) {
    throw ArgumentError("boost: base and correction shapes differ");
  }
  return (base + correction).cwiseMax(0.0).cwiseMin(1.0);
}

namespace {

ModelSpec WithBaseDims(ModelSpec spec) {
  if (!spec.base) throw ConfigError("boosted model needs a base spec");
  auto base = std::make_shared<ModelSpec>(*spec.base);
  if (base->vocab_size == 0) base->vocab_size = spec.vocab_size;
  if (base->input_dim == 0) base->input_dim = spec.input_dim;
  if (!spec.truncate_labels && base->truncate_labels) spec.truncate_labels = base->truncate_labels;
  spec.base = std::move(base);
  return spec;
}

}  // namespace

BoostedModel::BoostedModel(ModelSpec spec, const std::string& prefix)
    : spec_(WithBaseDims(std::move(spec))), base_prefix_(prefix + "base/") {
  ValidateSpec(spec_);
  if (spec_.base->vocab_size != spec_.vocab_size ||
      spec_.base->fitted_labels() != spec_.fitted_labels()) {
    throw ConfigError("boost: base and boost label spaces differ");
  }
  base_ = BuildModel(*spec_.base, base_prefix_);
  hidden_ = nncore::DenseLayer(prefix + "boost/hidden", spec_.video_input_width(),
                               spec_.hidden[0], Activation::kRelu);
  out_ = nncore::DenseLayer(prefix + "boost/out", spec_.hidden[0], spec_.fitted_labels(),
                            Activation::kTanh);
}

void BoostedModel::Declare(ParameterStore& store) const {
  const std::size_t first = store.size();
  base_->Declare(store);
  for (std::size_t i = first; i < store.size(); ++i) store.tensors()[i].trainable = false;
  hidden_.Declare(store);
  out_.Declare(store);
}

ParameterStore BoostedModel::Initialize(std::uint64_t seed) const {
  ParameterStore store = Model::Initialize(seed);
  if (spec_.base_checkpoint.empty()) return store;
  const nncore::Checkpoint ckpt = nncore::LoadCheckpoint(spec_.base_checkpoint);
  if (spec_.base_use_ema && !ckpt.ema) {
    throw SchemaError("boost: base checkpoint has no EMA tensors");
  }
  const ParameterStore& src = spec_.base_use_ema ? *ckpt.ema : ckpt.snapshot;
  for (const auto& t : src.tensors()) {
    const std::string name = base_prefix_ + t.name;
    if (!store.Contains(name) || store.at(name).shape != t.shape) {
      throw SchemaError("boost: base checkpoint tensor '" + t.name + "' does not fit the base");
    }
    store.at(name).values = t.values;
  }
  return store;
}

Matrix BoostedModel::Correction(const ParameterStore& params, const Batch& batch,
                                State* state) const {
  const Matrix x = AssembleVideoInput(batch.rows, spec_.input_features, spec_.input_dim);
  const Matrix h = hidden_.Forward(params, x, &state->hidden);
  return out_.Forward(params, h, &state->out);
}

ForwardResult BoostedModel::Forward(const ParameterStore& params, const Batch& batch) const {
  auto state = std::make_unique<State>();
  const int k = spec_.fitted_labels();
  state->base_probs = base_->Forward(params, batch).probs.leftCols(k);
  const Matrix corr = Correction(params, batch, state.get());
  state->sum = state->base_probs + corr;
  Matrix p = state->sum.cwiseMax(0.0).cwiseMin(1.0);
  return {PadLabels(p, spec_.vocab_size), std::move(state)};
}

void BoostedModel::Backward(const ParameterStore& params, const Batch&, const ForwardState& state,
                            const Matrix& dprobs, ParameterStore& grads) const {
  const auto& s = dynamic_cast<const State&>(state);
  const Matrix dsum =
      (s.sum.array() > 0.0 && s.sum.array() < 1.0)
          .select(dprobs.leftCols(spec_.fitted_labels()).array(), 0.0)
          .matrix();
  const Matrix dh = out_.Backward(params, dsum, s.out, grads);
  hidden_.Backward(params, dh, s.hidden, grads);
}

double BoostedModel::LossAndGradient(const ParameterStore& params, const Batch& batch,
                                     ParameterStore* grads) const {
  State s;
  const int k = spec_.fitted_labels();
  s.base_probs = base_->Forward(params, batch).probs.leftCols(k);
  const Matrix corr = Correction(params, batch, &s);
  const Matrix residual = batch.labels.leftCols(k) - s.base_probs;
  const nncore::LossResult loss = nncore::L2Loss(corr, residual);
  if (grads != nullptr) {
    const Matrix dh = out_.Backward(params, loss.grad, s.out, *grads);
    hidden_.Backward(params, dh, s.hidden, *grads);
  }
  return loss.loss;
}

}  // namespace vidlabel::models
