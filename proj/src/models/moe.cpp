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

#include "vidlabel/models/moe.h"

#include "vidlabel/common/errors.h"

namespace vidlabel::models {

using nncore::Activation;

MoeHead::MoeHead(const std::string& prefix, int gate_in, int expert_in, int labels, int experts)
    : gate_(prefix + "gate", gate_in, labels * (experts + 1), Activation::kSoftmax, experts + 1),
      expert_(prefix + "experts", expert_in, labels * experts, Activation::kSigmoid),
      labels_(labels),
      experts_(experts) {}

void MoeHead::Declare(ParameterStore& store) const {
  gate_.Declare(store);
  expert_.Declare(store);
}

Matrix MoeHead::Forward(const ParameterStore& params, const nncore::ConstMatrixRef& gate_in,
                        const nncore::ConstMatrixRef& expert_in, Cache* cache) const {
  if (gate_in.rows() != expert_in.rows()) throw ArgumentError("moe: batch sizes differ");
  Cache local;
  Cache& c = cache != nullptr ? *cache : local;
  const Matrix g = gate_.Forward(params, gate_in, &c.gate);
  const Matrix s = expert_.Forward(params, expert_in, &c.expert);
  const int e1 = experts_ + 1;
  Matrix p = Matrix::Zero(g.rows(), labels_);
  for (Eigen::Index b = 0; b < g.rows(); ++b) {
    for (int v = 0; v < labels_; ++v) {
      double acc = 0.0;
      for (int e = 0; e < experts_; ++e) acc += g(b, v * e1 + e) * s(b, v * experts_ + e);
      p(b, v) = acc;
    }
  }
  return p;
}

std::pair<Matrix, Matrix> MoeHead::Backward(const ParameterStore& params, const Matrix& dprobs,
                                            const Cache& cache, ParameterStore& grads) const {
  if (!cache.gate.valid || !cache.expert.valid) {
    throw UsageError("moe backward without a forward cache");
  }
  const Matrix& g = cache.gate.y;
  const Matrix& s = cache.expert.y;
  if (dprobs.rows() != g.rows() || dprobs.cols() != labels_) {
    throw ArgumentError("moe backward: upstream shape mismatch");
  }
  const int e1 = experts_ + 1;
  Matrix dg = Matrix::Zero(g.rows(), g.cols());
  Matrix ds(s.rows(), s.cols());
  for (Eigen::Index b = 0; b < g.rows(); ++b) {
    for (int v = 0; v < labels_; ++v) {
      const double d = dprobs(b, v);
      for (int e = 0; e < experts_; ++e) {
        dg(b, v * e1 + e) = d * s(b, v * experts_ + e);
        ds(b, v * experts_ + e) = d * g(b, v * e1 + e);
      }
    }
  }
  Matrix dgate_in = gate_.Backward(params, dg, cache.gate, grads);
  Matrix dexpert_in = expert_.Backward(params, ds, cache.expert, grads);
  return {std::move(dgate_in), std::move(dexpert_in)};
}

}  // namespace vidlabel::models
