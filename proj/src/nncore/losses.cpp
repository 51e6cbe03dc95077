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

#include "vidlabel/nncore/losses.h"

#include <algorithm>
#include <cmath>

#include "vidlabel/common/errors.h"

namespace vidlabel::nncore {

namespace {

void CheckSameShape(const ConstMatrixRef& a, const ConstMatrixRef& b, const char* what) {
  if (a.rows() != b.rows() || a.cols() != b.cols() || a.rows() == 0) {
    throw ArgumentError(std::string(what) + ": shape mismatch or empty batch");
  }
}

}  // namespace

LossResult CrossEntropyMultilabel(const ConstMatrixRef& p, const ConstMatrixRef& y) {
  CheckSameShape(p, y, "cross entropy");
  const double inv_b = 1.0 / static_cast<double>(p.rows());
  LossResult out;
  out.grad.resize(p.rows(), p.cols());
  double total = 0.0;
  for (Eigen::Index r = 0; r < p.rows(); ++r) {
    for (Eigen::Index c = 0; c < p.cols(); ++c) {
      const double q = std::clamp(p(r, c), kProbabilityClamp, 1.0 - kProbabilityClamp);
      const double t = y(r, c);
      total -= t * std::log(q) + (1.0 - t) * std::log(1.0 - q);
      out.grad(r, c) = (-t / q + (1.0 - t) / (1.0 - q)) * inv_b;
    }
  }
  out.loss = total * inv_b;
  return out;
}

LossResult L2Loss(const ConstMatrixRef& p, const ConstMatrixRef& target) {
  CheckSameShape(p, target, "l2 loss");
  const double inv_b = 1.0 / static_cast<double>(p.rows());
  LossResult out;
  out.grad = (p - target) * inv_b;
  out.loss = 0.5 * (p - target).squaredNorm() * inv_b;
  return out;
}

}  // namespace vidlabel::nncore
