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

#include "vidlabel/models/model.h"

#include "vidlabel/common/errors.h"
#include "vidlabel/models/birnn.h"
#include "vidlabel/models/boost.h"
#include "vidlabel/models/video_models.h"
#include "vidlabel/nncore/init.h"
#include "vidlabel/nncore/losses.h"

namespace vidlabel::models {

Matrix LabelMatrix(const std::vector<const std::vector<int>*>& label_sets, int vocab_size) {
  Matrix y = Matrix::Zero(static_cast<Eigen::Index>(label_sets.size()), vocab_size);
  for (std::size_t b = 0; b < label_sets.size(); ++b) {
    for (int v : *label_sets[b]) {
      if (v < 0 || v >= vocab_size) throw ArgumentError("label outside vocabulary");
      y(static_cast<Eigen::Index>(b), v) = 1.0;
    }
  }
  return y;
}

Batch MakeVideoBatch(std::vector<const features::VideoFeatures*> rows, int vocab_size) {
  Batch batch;
  std::vector<const std::vector<int>*> labels;
  for (const auto* r : rows) labels.push_back(&r->labels);
  batch.labels = LabelMatrix(labels, vocab_size);
  batch.rows = std::move(rows);
  return batch;
}

Batch MakeFrameBatch(std::vector<const dataio::FrameRecord*> records, int vocab_size) {
  Batch batch;
  std::vector<const std::vector<int>*> labels;
  for (const auto* r : records) labels.push_back(&r->labels);
  batch.labels = LabelMatrix(labels, vocab_size);
  batch.records = std::move(records);
  return batch;
}

Matrix AssembleVideoInput(const std::vector<const features::VideoFeatures*>& rows,
                          const std::vector<FeatureBlock>& blocks, int dim) {
  if (rows.empty()) throw ArgumentError("video batch is empty (frame records given?)");
  int width = 0;
  for (auto b : blocks) width += b == FeatureBlock::kNumFrames ? 1 : dim;
  Matrix x(static_cast<Eigen::Index>(rows.size()), width);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const auto& row = *rows[r];
    Eigen::Index col = 0;
    for (auto b : blocks) {
      if (b == FeatureBlock::kNumFrames) {
        x(static_cast<Eigen::Index>(r), col++) = row.num_frames / kNumFramesScale;
        continue;
      }
      const std::vector<double>& v = b == FeatureBlock::kMean  ? row.mean
                                     : b == FeatureBlock::kStd ? row.std
                                                               : row.x3;
      if (static_cast<int>(v.size()) != dim) {
        throw ConfigError("feature block '" + std::string(BlockName(b)) + "' missing or of wrong size");
      }
      for (double value : v) x(static_cast<Eigen::Index>(r), col++) = value;
    }
  }
  return x;
}

ParameterStore Model::Initialize(std::uint64_t seed) const {
  ParameterStore store;
  Declare(store);
  nncore::InitStore(store, seed);
  return store;
}

double Model::LossAndGradient(const ParameterStore& params, const Batch& batch,
                              ParameterStore* grads) const {
  ForwardResult fr = Forward(params, batch);
  const int k = spec().fitted_labels();
  const nncore::LossResult loss =
      nncore::CrossEntropyMultilabel(fr.probs.leftCols(k), batch.labels.leftCols(k));
  if (grads != nullptr) {
    Matrix dprobs = Matrix::Zero(fr.probs.rows(), fr.probs.cols());
    dprobs.leftCols(k) = loss.grad;
    Backward(params, batch, *fr.state, dprobs, *grads);
  }
  return loss.loss;
}

std::unique_ptr<Model> BuildModel(const ModelSpec& spec, const std::string& prefix) {
  switch (spec.kind) {
    case ModelKind::kMonn: return std::make_unique<MonnModel>(spec, prefix);
    case ModelKind::kLogistic: return std::make_unique<LogisticModel>(spec, prefix);
    case ModelKind::kBiRnn: return std::make_unique<BiRnnModel>(spec, prefix);
    case ModelKind::kBoosted: return std::make_unique<BoostedModel>(spec, prefix);
  }
  throw ConfigError("unknown model kind");
}

}  // namespace vidlabel::models
