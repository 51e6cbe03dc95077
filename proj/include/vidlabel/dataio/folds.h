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

#ifndef VIDLABEL_DATAIO_FOLDS_H_
#define VIDLABEL_DATAIO_FOLDS_H_

#include <vector>

#include "vidlabel/dataio/manifest.h"

namespace vidlabel::dataio {

enum class ShardRole { kTrain, kValidation };

// Shard i validates in fold f iff i mod num_folds == f. A single fold holds
// nothing out: every shard trains.
struct FoldSpec {
  int num_folds = 5;
  int fold_index = 0;
  std::vector<ShardRole> roles;

  std::vector<int> train_shards() const;
  std::vector<int> validation_shards() const;
  bool is_validation(int shard) const {
    return roles.at(static_cast<std::size_t>(shard)) == ShardRole::kValidation;
  }
};

FoldSpec AssignFolds(int num_shards, int num_folds, int fold_index);
inline FoldSpec AssignFolds(const DatasetManifest& manifest, int num_folds,
                            int fold_index) {
  return AssignFolds(static_cast<int>(manifest.shard_paths.size()), num_folds,
                     fold_index);
}

}  // namespace vidlabel::dataio

#endif  // VIDLABEL_DATAIO_FOLDS_H_
