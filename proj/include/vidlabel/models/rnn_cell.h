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

#ifndef VIDLABEL_MODELS_RNN_CELL_H_
#define VIDLABEL_MODELS_RNN_CELL_H_

#include <string>
#include <vector>

#include "vidlabel/models/model_spec.h"
#include "vidlabel/nncore/parameter_store.h"

namespace vidlabel::models {

using nncore::Matrix;
using nncore::ParameterStore;

// Batched LSTM or GRU cell.
//
// LSTM, with z = x W + h U + b split into [i | f | g | o]:
//   c' = sigmoid(z_f + forget_bias) * c + sigmoid(z_i) * tanh(z_g)
//   h' = sigmoid(z_o) * tanh(c')
// GRU:
//   r = sigmoid(x W_r + h U_r + b_r),  u = sigmoid(x W_u + h U_u + b_u)
//   n = tanh(x W_n + (r * h) U_n + b_n),  h' = u * h + (1 - u) * n
//
// Rows whose `active` flag is false keep their previous state exactly; this
// is how sequences of different lengths share a batch.
class RnnCell {
 public:
  struct State {
    Matrix h;
    Matrix c;  // LSTM only
  };

  struct StepCache {
    Matrix x;
    State prev;
    Matrix gates;  // post-activation gate values
    Matrix tanh_c;  // LSTM: tanh(c'); GRU: candidate n
    Matrix rh;      // GRU: r * h
    std::vector<char> active;
  };

  RnnCell() = default;
  RnnCell(const std::string& prefix, CellType cell, int input_dim, int units,
          double forget_bias = 1.0);

  void Declare(ParameterStore& store) const;
  State ZeroState(Eigen::Index batch) const;

  // `active` may be empty, meaning every row is active.
  State Step(const ParameterStore& params, const nncore::ConstMatrixRef& x, const State& prev,
             const std::vector<char>& active, StepCache* cache) const;

  struct StepGrads {
    Matrix dx;
    State dprev;
  };
  // Backpropagates dL/d(new state) through one step, accumulating parameter
  // gradients. `dnext.c` is ignored for GRU.
  StepGrads StepBackward(const ParameterStore& params, const StepCache& cache,
                         const State& dnext, ParameterStore& grads) const;

  CellType cell() const { return cell_; }
  int units() const { return units_; }
  int input_dim() const { return input_dim_; }

 private:
  std::string w_, u_, un_, b_;
  CellType cell_ = CellType::kLstm;
  int input_dim_ = 0;
  int units_ = 0;
  double forget_bias_ = 1.0;
};

}  // namespace vidlabel::models

#endif  // VIDLABEL_MODELS_RNN_CELL_H_
