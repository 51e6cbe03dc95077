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

#include "vidlabel/models/rnn_cell.h"

#include "vidlabel/common/errors.h"
#include "vidlabel/nncore/dense.h"

namespace vidlabel::models {

namespace {

Matrix SigmoidOf(const Matrix& z) {
  return z.unaryExpr([](double v) { return nncore::Sigmoid(v); });
}

// Keeps rows of `prev` where the row is inactive.
void HoldInactive(Matrix& next, const Matrix& prev, const std::vector<char>& active) {
  if (active.empty()) return;
  for (Eigen::Index b = 0; b < next.rows(); ++b) {
    if (!active[static_cast<std::size_t>(b)]) next.row(b) = prev.row(b);
  }
}

void ZeroInactive(Matrix& m, const std::vector<char>& active) {
  if (active.empty()) return;
  for (Eigen::Index b = 0; b < m.rows(); ++b) {
    if (!active[static_cast<std::size_t>(b)]) m.row(b).setZero();
  }
}

}  // namespace

RnnCell::RnnCell(const std::string& prefix, CellType cell, int input_dim, int units,
                 double forget_bias)
    : w_(prefix + "/W"),
      u_(prefix + "/U"),
      un_(prefix + "/Un"),
      b_(prefix + "/b"),
      cell_(cell),
      input_dim_(input_dim),
      units_(units),
      forget_bias_(forget_bias) {}

void RnnCell::Declare(ParameterStore& store) const {
  if (cell_ == CellType::kLstm) {
    store.Add(w_, {input_dim_, 4 * units_});
    store.Add(u_, {units_, 4 * units_});
    store.Add(b_, {4 * units_});
  } else {
    store.Add(w_, {input_dim_, 3 * units_});
    store.Add(u_, {units_, 2 * units_});
    store.Add(un_, {units_, units_});
    store.Add(b_, {3 * units_});
  }
}

RnnCell::State RnnCell::ZeroState(Eigen::Index batch) const {
  State s;
  s.h = Matrix::Zero(batch, units_);
  if (cell_ == CellType::kLstm) s.c = Matrix::Zero(batch, units_);
  return s;
}

RnnCell::State RnnCell::Step(const ParameterStore& params, const nncore::ConstMatrixRef& x,
                             const State& prev, const std::vector<char>& active,
                             StepCache* cache) const {
  if (x.cols() != input_dim_ || prev.h.cols() != units_ || prev.h.rows() != x.rows() ||
      (!active.empty() && active.size() != static_cast<std::size_t>(x.rows()))) {
    throw ArgumentError("rnn step: shape mismatch");
  }
  if (!x.allFinite()) throw NumericError("rnn step: non-finite input");
  const int u = units_;
  const auto w = params.Mat(w_);
  const auto bias = params.Vec(b_);
  State next;
  Matrix gates;
  Matrix aux;
  Matrix rh;
  if (cell_ == CellType::kLstm) {
    Matrix z = x * w + prev.h * params.Mat(u_);
    z.rowwise() += bias;
    z.middleCols(u, u).array() += forget_bias_;
    gates.resize(z.rows(), 4 * u);
    gates.leftCols(2 * u) = SigmoidOf(z.leftCols(2 * u));
    gates.middleCols(2 * u, u) = z.middleCols(2 * u, u).array().tanh().matrix();
    gates.rightCols(u) = SigmoidOf(z.rightCols(u));
    const auto i = gates.leftCols(u).array();
    const auto f = gates.middleCols(u, u).array();
    const auto g = gates.middleCols(2 * u, u).array();
    const auto o = gates.rightCols(u).array();
    next.c = (f * prev.c.array() + i * g).matrix();
    aux = next.c.array().tanh().matrix();
    next.h = (o * aux.array()).matrix();
    HoldInactive(next.c, prev.c, active);
  } else {
    Matrix zx = x * w;
    zx.rowwise() += bias;
    Matrix zru = zx.leftCols(2 * u) + prev.h * params.Mat(u_);
    gates = SigmoidOf(zru);
    const auto r = gates.leftCols(u).array();
    const auto upd = gates.rightCols(u).array();
    rh = (r * prev.h.array()).matrix();
    aux = (zx.rightCols(u) + rh * params.Mat(un_)).array().tanh().matrix();
    next.h = (upd * prev.h.array() + (1.0 - upd) * aux.array()).matrix();
  }
  HoldInactive(next.h, prev.h, active);
  if (cache != nullptr) {
    cache->x = x;
    cache->prev = prev;
    cache->gates = std::move(gates);
    cache->tanh_c = std::move(aux);
    cache->rh = std::move(rh);
    cache->active = active;
  }
  return next;
}

RnnCell::StepGrads RnnCell::StepBackward(const ParameterStore& params, const StepCache& cache,
                                         const State& dnext, ParameterStore& grads) const {
  const int u = units_;
  const auto& active = cache.active;
  StepGrads out;
  Matrix dh = dnext.h;
  ZeroInactive(dh, active);
  if (cell_ == CellType::kLstm) {
    Matrix dc = dnext.c;
    ZeroInactive(dc, active);
    const auto i = cache.gates.leftCols(u).array();
    const auto f = cache.gates.middleCols(u, u).array();
    const auto g = cache.gates.middleCols(2 * u, u).array();
    const auto o = cache.gates.rightCols(u).array();
    const auto tc = cache.tanh_c.array();
    const Matrix dc_total = (dc.array() + dh.array() * o * (1.0 - tc.square())).matrix();
    Matrix dz(dh.rows(), 4 * u);
    dz.leftCols(u) = (dc_total.array() * g * i * (1.0 - i)).matrix();
    dz.middleCols(u, u) = (dc_total.array() * cache.prev.c.array() * f * (1.0 - f)).matrix();
    dz.middleCols(2 * u, u) = (dc_total.array() * i * (1.0 - g.square())).matrix();
    dz.rightCols(u) = (dh.array() * tc * o * (1.0 - o)).matrix();

    grads.Mat(w_) += cache.x.transpose() * dz;
    grads.Mat(u_) += cache.prev.h.transpose() * dz;
    grads.Vec(b_) += dz.colwise().sum();
    out.dx = dz * params.Mat(w_).transpose();
    out.dprev.h = dz * params.Mat(u_).transpose();
    out.dprev.c = (dc_total.array() * f).matrix();
  } else {
    const auto r = cache.gates.leftCols(u).array();
    const auto upd = cache.gates.rightCols(u).array();
    const auto n = cache.tanh_c.array();
    const auto h = cache.prev.h.array();
    const Matrix dn = (dh.array() * (1.0 - upd) * (1.0 - n.square())).matrix();
    const Matrix drh = dn * params.Mat(un_).transpose();
    Matrix dz(dh.rows(), 3 * u);
    dz.leftCols(u) = (drh.array() * h * r * (1.0 - r)).matrix();
    dz.middleCols(u, u) = (dh.array() * (h - n) * upd * (1.0 - upd)).matrix();
    dz.rightCols(u) = dn;

    grads.Mat(w_) += cache.x.transpose() * dz;
    grads.Mat(u_) += cache.prev.h.transpose() * dz.leftCols(2 * u);
    grads.Mat(un_) += cache.rh.transpose() * dn;
    grads.Vec(b_) += dz.colwise().sum();
    out.dx = dz * params.Mat(w_).transpose();
    out.dprev.h = (dz.leftCols(2 * u) * params.Mat(u_).transpose()).eval();
    out.dprev.h.array() += dh.array() * upd + drh.array() * r;
  }
  // Inactive rows pass their gradient straight through to the previous state.
  if (!active.empty()) {
    for (Eigen::Index b = 0; b < dh.rows(); ++b) {
      if (active[static_cast<std::size_t>(b)]) continue;
      out.dprev.h.row(b) = dnext.h.row(b);
      if (cell_ == CellType::kLstm) out.dprev.c.row(b) = dnext.c.row(b);
    }
  }
  return out;
}

}  // namespace vidlabel::models
