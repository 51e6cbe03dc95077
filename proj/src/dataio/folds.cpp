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

#include "vidlabel/dataio/folds.h"

#include <string>

#include "vidlabel/common/errors.h"

namespace vidlabel::dataio {

FoldSpec AssignFolds(int num_shards, int num_folds, int fold_index) {
  if (num_folds < 1) throw ConfigError("num_folds must be >= 1");
  if (fold_index < 0 || fold_index >= num_folds) {
    throw ConfigError("fold_index " + std::to_string(fold_index) + " outside [0, " +
                      std::to_string(num_folds) + ")");
  }
  if (num_folds > num_shards) {
    throw ConfigError("num_folds " + std::to_string(num_folds) + " exceeds shard count " +
                      std::to_string(num_shards));
  }
  FoldSpec spec;
  spec.num_folds = num_folds;
  spec.fold_index = fold_index;
  spec.roles.resize(static_cast<std::size_t>(num_shards), ShardRole::kTrain);
  if (num_folds > 1) {
    for (int i = 0; i < num_shards; ++i) {
      if (i % num_folds == fold_index) spec.roles[static_cast<std::size_t>(i)] = ShardRole::kValidation;
    }
  }
  return spec;
}

std::vector<int> FoldSpec::train_shards() const {
  std::vector<int> out;
  for (std::size_t i = 0; i < roles.size(); ++i) {
    if (roles[i] == ShardRole::kTrain) out.push_back(static_cast<int>(i));
  }
  return out;
}

std::vector<int> FoldSpec::validation_shards() const {
  std::vector<int> out;
  for (std::size_t i = 0; i < roles.size(); ++i) {
    if (roles[i] == ShardRole::kValidation) out.push_back(static_cast<int>(i));
  }
  return out;
}

}  // namespace vidlabel::dataio
