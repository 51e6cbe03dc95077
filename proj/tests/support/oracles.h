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

// Independent reference implementations used as test oracles. They favour
// the most literal reading of each definition over speed.

#ifndef VIDLABEL_TESTS_SUPPORT_ORACLES_H_
#define VIDLABEL_TESTS_SUPPORT_ORACLES_H_

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace vidlabel::testing {

struct OraclePrediction {
  std::string video;
  int label;
  double confidence;
};

// Average precision of the globally ranked list, computed by counting for
// every prediction how many others rank ahead of it (O(N^2)).
double BruteForceGap(const std::vector<OraclePrediction>& preds,
                     const std::map<std::string, std::set<int>>& truth);

struct OracleMoments {
  std::vector<double> mean;
  std::vector<double> std;
  std::vector<double> x3;
};

// Per-coordinate moments by direct summation over the frames.
OracleMoments NaiveMoments(const std::vector<std::vector<double>>& frames);

// Shadow after k updates towards a constant target.
double EmaClosedForm(double start, double target, std::int64_t k, double half_life);

// Bias-corrected Adam on a scalar, written out step by step.
double ScalarAdam(double w, const std::vector<double>& grads, double lr, double b1, double b2,
                  double eps);

// Cosine similarity of two dense vectors.
double Cosine(const std::vector<double>& a, const std::vector<double>& b);

}  // namespace vidlabel::testing

#endif  // VIDLABEL_TESTS_SUPPORT_ORACLES_H_
