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

#ifndef VIDLABEL_NNCORE_PARAMETER_STORE_H_
#define VIDLABEL_NNCORE_PARAMETER_STORE_H_

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include <Eigen/Dense>

namespace vidlabel::nncore {

using Matrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using RowVector = Eigen::Matrix<double, 1, Eigen::Dynamic>;
using MatrixMap = Eigen::Map<Matrix>;
using ConstMatrixMap = Eigen::Map<const Matrix>;
using RowVectorMap = Eigen::Map<RowVector>;
using ConstRowVectorMap = Eigen::Map<const RowVector>;
using ConstMatrixRef = Eigen::Ref<const Matrix>;

struct Tensor {
  std::string name;
  std::vector<std::int64_t> shape;
  std::vector<double> values;
  // Frozen tensors are skipped by the optimizer and EMA.
  bool trainable = true;

  bool operator==(const Tensor&) const = default;
};

// Named arrays in insertion order. Iteration order is what the optimizer,
// checkpoints and gradient checks use, so it must not depend on hashing.
class ParameterStore {
 public:
  // Adds a zero-filled tensor. Throws ArgumentError on a duplicate name.
  Tensor& Add(const std::string& name, std::vector<std::int64_t> shape,
              bool trainable = true);

  bool Contains(const std::string& name) const { return index_.contains(name); }
  Tensor& at(const std::string& name);
  const Tensor& at(const std::string& name) const;

  // 2-D view; a 1-D tensor of length n is viewed as 1 x n.
  MatrixMap Mat(const std::string& name);
  ConstMatrixMap Mat(const std::string& name) const;
  RowVectorMap Vec(const std::string& name);
  ConstRowVectorMap Vec(const std::string& name) const;

  std::vector<Tensor>& tensors() { return tensors_; }
  const std::vector<Tensor>& tensors() const { return tensors_; }
  std::size_t size() const { return tensors_.size(); }
  std::size_t num_elements() const;

  std::int64_t step() const { return step_; }
  void set_step(std::int64_t step) { step_ = step; }

  // Same names, shapes and trainable flags with zero values and step 0.
  ParameterStore ZerosLike() const;
  bool SameLayout(const ParameterStore& other) const;
  void SetZero();
  // Copies `src`'s values and step; layouts must match.
  void CopyValuesFrom(const ParameterStore& src);
  bool AllFinite() const;

  bool operator==(const ParameterStore& other) const {
    return step_ == other.step_ && tensors_ == other.tensors_;
  }

 private:
  std::vector<Tensor> tensors_;
  std::unordered_map<std::string, std::size_t> index_;
  std::int64_t step_ = 0;
};

std::int64_t NumElements(const std::vector<std::int64_t>& shape);

}  // namespace vidlabel::nncore

#endif  // VIDLABEL_NNCORE_PARAMETER_STORE_H_
