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

#include "vidlabel/nncore/parameter_store.h"

#include <algorithm>
#include <cmath>

#include "vidlabel/common/errors.h"

namespace vidlabel::nncore {

std::int64_t NumElements(const std::vector<std::int64_t>& shape) {
  std::int64_t n = 1;
  for (auto d : shape) n *= d;
  return n;
}

Tensor& ParameterStore::Add(const std::string& name, std::vector<std::int64_t> shape,
                            bool trainable) {
  if (Contains(name)) throw ArgumentError("duplicate parameter '" + name + "'");
  if (shape.empty() || shape.size() > 2 ||
      std::any_of(shape.begin(), shape.end(), [](auto d) { return d < 1; })) {
    throw ArgumentError("parameter '" + name + "' needs a 1-D or 2-D positive shape");
  }
  Tensor t;
  t.name = name;
  t.values.assign(static_cast<std::size_t>(NumElements(shape)), 0.0);
  t.shape = std::move(shape);
  t.trainable = trainable;
  index_.emplace(name, tensors_.size());
  tensors_.push_back(std::move(t));
  return tensors_.back();
}

Tensor& ParameterStore::at(const std::string& name) {
  auto it = index_.find(name);
  if (it == index_.end()) throw ArgumentError("unknown parameter '" + name + "'");
  return tensors_[it->second];
}

const Tensor& ParameterStore::at(const std::string& name) const {
  auto it = index_.find(name);
  if (it == index_.end()) throw ArgumentError("unknown parameter '" + name + "'");
  return tensors_[it->second];
}

namespace {

std::pair<Eigen::Index, Eigen::Index> Dims2(const Tensor& t) {
  if (t.shape.size() == 1) return {1, t.shape[0]};
  return {t.shape[0], t.shape[1]};
}

}  // namespace

MatrixMap ParameterStore::Mat(const std::string& name) {
  Tensor& t = at(name);
  auto [r, c] = Dims2(t);
  return MatrixMap(t.values.data(), r, c);
}

ConstMatrixMap ParameterStore::Mat(const std::string& name) const {
  const Tensor& t = at(name);
  auto [r, c] = Dims2(t);
  return ConstMatrixMap(t.values.data(), r, c);
}

RowVectorMap ParameterStore::Vec(const std::string& name) {
  Tensor& t = at(name);
  return RowVectorMap(t.values.data(), static_cast<Eigen::Index>(t.values.size()));
}

ConstRowVectorMap ParameterStore::Vec(const std::string& name) const {
  const Tensor& t = at(name);
  return ConstRowVectorMap(t.values.data(), static_cast<Eigen::Index>(t.values.size()));
}

std::size_t ParameterStore::num_elements() const {
  std::size_t n = 0;
  for (const auto& t : tensors_) n += t.values.size();
  return n;
}

ParameterStore ParameterStore::ZerosLike() const {
  ParameterStore out;
  for (const auto& t : tensors_) out.Add(t.name, t.shape, t.trainable);
  return out;
}

bool ParameterStore::SameLayout(const ParameterStore& other) const {
  if (tensors_.size() != other.tensors_.size()) return false;
  for (std::size_t i = 0; i < tensors_.size(); ++i) {
    if (tensors_[i].name != other.tensors_[i].name ||
        tensors_[i].shape != other.tensors_[i].shape) {
      return false;
    }
  }
  return true;
}

void ParameterStore::SetZero() {
  for (auto& t : tensors_) std::fill(t.values.begin(), t.values.end(), 0.0);
}

void ParameterStore::CopyValuesFrom(const ParameterStore& src) {
  if (!SameLayout(src)) throw ArgumentError("parameter layouts differ");
  for (std::size_t i = 0; i < tensors_.size(); ++i) tensors_[i].values = src.tensors_[i].values;
  step_ = src.step_;
}

bool ParameterStore::AllFinite() const {
  for (const auto& t : tensors_) {
    for (double v : t.values) {
      if (!std::isfinite(v)) return false;
    }
  }
  return true;
}

}  // namespace vidlabel::nncore
