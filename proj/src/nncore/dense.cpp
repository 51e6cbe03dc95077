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

#include "vidlabel/nncore/dense.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "vidlabel/common/errors.h"

namespace vidlabel::nncore {

namespace {

constexpr double kSigmoidHi = 1.0 - 0x1.0p-53;
constexpr double kSigmoidLo = std::numeric_limits<double>::min();

std::string ShapeStr(Eigen::Index r, Eigen::Index c) {
  return std::to_string(r) + "x" + std::to_string(c);
}

int GroupWidth(Eigen::Index cols, int group) {
  const int g = group <= 0 ? static_cast<int>(cols) : group;
  if (g == 0 || cols % g != 0) {
    throw ArgumentError("softmax group " + std::to_string(group) + " does not divide width " +
                        std::to_string(cols));
  }
  return g;
}

}  // namespace

double Sigmoid(double z) {
  const double y = z >= 0.0 ? 1.0 / (1.0 + std::exp(-z)) : std::exp(z) / (1.0 + std::exp(z));
  return std::clamp(y, kSigmoidLo, kSigmoidHi);
}

Matrix Activate(const ConstMatrixRef& z, Activation act, int group) {
  switch (act) {
    case Activation::kLinear: return z;
    case Activation::kRelu: return z.cwiseMax(0.0);
    case Activation::kSigmoid: return z.unaryExpr([](double v) { return Sigmoid(v); });
    case Activation::kTanh: return z.array().tanh().matrix();
    case Activation::kSoftmax: {
      const int g = GroupWidth(z.cols(), group);
      Matrix y(z.rows(), z.cols());
      for (Eigen::Index r = 0; r < z.rows(); ++r) {
        for (Eigen::Index c0 = 0; c0 < z.cols(); c0 += g) {
          const auto seg = z.row(r).segment(c0, g);
          const double shift = seg.maxCoeff();
          auto out = y.row(r).segment(c0, g);
          out = (seg.array() - shift).exp().matrix();
          out /= out.sum();
        }
      }
      return y;
    }
  }
  return z;
}

Matrix ActivationBackward(const ConstMatrixRef& dy, const ConstMatrixRef& y, Activation act,
                          int group) {
  switch (act) {
    case Activation::kLinear: return dy;
    case Activation::kRelu:
      return (y.array() > 0.0).select(dy.array(), 0.0).matrix();
    case Activation::kSigmoid:
      return (dy.array() * y.array() * (1.0 - y.array())).matrix();
    case Activation::kTanh:
      return (dy.array() * (1.0 - y.array().square())).matrix();
    case Activation::kSoftmax: {
      const int g = GroupWidth(y.cols(), group);
      Matrix dz(y.rows(), y.cols());
      for (Eigen::Index r = 0; r < y.rows(); ++r) {
        for (Eigen::Index c0 = 0; c0 < y.cols(); c0 += g) {
          const auto ys = y.row(r).segment(c0, g);
          const auto ds = dy.row(r).segment(c0, g);
          const double inner = ys.dot(ds);
          dz.row(r).segment(c0, g) = (ys.array() * (ds.array() - inner)).matrix();
        }
      }
      return dz;
    }
  }
  return dy;
}

Matrix DenseForward(const ConstMatrixRef& x, const ConstMatrixRef& w, const ConstRowVectorRef& b,
                    Activation act, int group, DenseCache* cache) {
  if (x.cols() != w.rows() || b.cols() != w.cols()) {
    throw ArgumentError("dense: x " + ShapeStr(x.rows(), x.cols()) + ", W " +
                        ShapeStr(w.rows(), w.cols()) + ", b " + std::to_string(b.cols()));
  }
  if (!x.allFinite()) throw NumericError("dense: non-finite input");
  Matrix z = x * w;
  z.rowwise() += b;
  Matrix y = Activate(z, act, group);
  if (cache != nullptr) {
    cache->valid = true;
    cache->x = x;
    cache->y = y;
    cache->act = act;
    cache->group = group;
  }
  return y;
}

DenseGrads DenseBackward(const ConstMatrixRef& upstream, const DenseCache& cache,
                         const ConstMatrixRef& w) {
  if (!cache.valid) throw UsageError("dense backward without a forward cache");
  if (upstream.rows() != cache.y.rows() || upstream.cols() != cache.y.cols()) {
    throw ArgumentError("dense backward: upstream " + ShapeStr(upstream.rows(), upstream.cols()) +
                        " vs output " + ShapeStr(cache.y.rows(), cache.y.cols()));
  }
  const Matrix dz = ActivationBackward(upstream, cache.y, cache.act, cache.group);
  DenseGrads g;
  g.dW = cache.x.transpose() * dz;
  g.db = dz.colwise().sum();
  g.dx = dz * w.transpose();
  return g;
}

DenseLayer::DenseLayer(std::string name, int in, int out, Activation act, int group)
    : weight_(name + "/W"), bias_(name + "/b"), in_(in), out_(out), act_(act), group_(group) {}

void DenseLayer::Declare(ParameterStore& store) const {
  store.Add(weight_, {in_, out_});
  store.Add(bias_, {out_});
}

Matrix DenseLayer::Forward(const ParameterStore& params, const ConstMatrixRef& x,
                           DenseCache* cache) const {
  return DenseForward(x, params.Mat(weight_), params.Vec(bias_), act_, group_, cache);
}

Matrix DenseLayer::Backward(const ParameterStore& params, const ConstMatrixRef& upstream,
                            const DenseCache& cache, ParameterStore& grads) const {
  DenseGrads g = DenseBackward(upstream, cache, params.Mat(weight_));
  grads.Mat(weight_) += g.dW;
  grads.Vec(bias_) += g.db;
  return std::move(g.dx);
}

}  // namespace vidlabel::nncore
