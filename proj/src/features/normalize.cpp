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

#include "vidlabel/features/normalize.h"

#include <algorithm>
#include <cmath>
#include <utility>

#include <json.hpp>

#include "vidlabel/common/errors.h"

namespace vidlabel::features {

std::string_view FieldName(FeatureField field) {
  switch (field) {
    case FeatureField::kMean: return "mean";
    case FeatureField::kStd: return "std";
    case FeatureField::kX3: return "x3";
  }
  return "mean";
}

FeatureField ParseField(std::string_view name) {
  if (name == "mean") return FeatureField::kMean;
  if (name == "std") return FeatureField::kStd;
  if (name == "x3") return FeatureField::kX3;
  throw ConfigError("unknown feature field '" + std::string(name) + "'");
}

std::string_view ModeName(NormalizeMode mode) {
  return mode == NormalizeMode::kOff ? "off" : "global_l2";
}

NormalizeMode ParseMode(std::string_view name) {
  if (name == "off") return NormalizeMode::kOff;
  if (name == "global_l2") return NormalizeMode::kGlobalL2;
  throw ConfigError("unknown normalization mode '" + std::string(name) + "'");
}

const std::vector<double>& Block(const VideoFeatures& row, FeatureField field) {
  switch (field) {
    case FeatureField::kMean: return row.mean;
    case FeatureField::kStd: return row.std;
    case FeatureField::kX3: return row.x3;
  }
  return row.mean;
}

std::vector<double>& Block(VideoFeatures& row, FeatureField field) {
  return const_cast<std::vector<double>&>(Block(std::as_const(row), field));
}

GlobalMoments FitGlobalMoments(const std::vector<VideoFeatures>& rows, FeatureField field) {
  if (rows.empty()) throw ArgumentError("global moments of an empty row set");
  const std::size_t dim = Block(rows.front(), field).size();
  GlobalMoments gm;
  gm.field = field;
  gm.mean.assign(dim, 0.0);
  gm.std.assign(dim, 0.0);
  for (const auto& row : rows) {
    const auto& x = Block(row, field);
    if (x.size() != dim) throw ArgumentError("rows have differing dimensions");
    for (std::size_t d = 0; d < dim; ++d) gm.mean[d] += x[d];
  }
  const double n = static_cast<double>(rows.size());
  for (double& m : gm.mean) m /= n;
  for (const auto& row : rows) {
    const auto& x = Block(row, field);
    for (std::size_t d = 0; d < dim; ++d) {
      const double c = x[d] - gm.mean[d];
      gm.std[d] += c * c;
    }
  }
  for (double& s : gm.std) s = std::max(std::sqrt(s / n), kMomentStdFloor);
  return gm;
}

VideoFeatures Normalize(const VideoFeatures& row, const GlobalMoments& gm,
                        NormalizeMode mode) {
  if (mode == NormalizeMode::kOff) return row;
  VideoFeatures out = row;
  auto& x = Block(out, gm.field);
  if (x.size() != gm.mean.size() || x.size() != gm.std.size()) {
    throw ArgumentError("row and global moments dimensions differ");
  }
  double norm2 = 0.0;
  for (std::size_t d = 0; d < x.size(); ++d) {
    x[d] = (x[d] - gm.mean[d]) / gm.std[d];
    norm2 += x[d] * x[d];
  }
  if (norm2 > 0.0) {
    const double inv = 1.0 / std::sqrt(norm2);
    for (double& v : x) v *= inv;
  }
  return out;
}

NormalizationStats FitNormalization(const std::vector<VideoFeatures>& rows) {
  NormalizationStats stats;
  for (FeatureField f : {FeatureField::kMean, FeatureField::kStd, FeatureField::kX3}) {
    stats.blocks.push_back(FitGlobalMoments(rows, f));
  }
  return stats;
}

VideoFeatures NormalizeRow(const VideoFeatures& row, const NormalizationStats& stats,
                           NormalizeMode mode) {
  if (mode == NormalizeMode::kOff) return row;
  VideoFeatures out = row;
  for (const auto& gm : stats.blocks) out = Normalize(out, gm, mode);
  return out;
}

std::string StatsToJson(const NormalizationStats& stats) {
  nlohmann::ordered_json j = nlohmann::ordered_json::array();
  for (const auto& gm : stats.blocks) {
    nlohmann::ordered_json b;
    b["field"] = FieldName(gm.field);
    b["mean"] = gm.mean;
    b["std"] = gm.std;
    j.push_back(std::move(b));
  }
  return j.dump() + "\n";
}

NormalizationStats StatsFromJson(const std::string& text) {
  NormalizationStats stats;
  try {
    for (const auto& b : nlohmann::json::parse(text)) {
      GlobalMoments gm;
      gm.field = ParseField(b.at("field").get<std::string>());
      gm.mean = b.at("mean").get<std::vector<double>>();
      gm.std = b.at("std").get<std::vector<double>>();
      stats.blocks.push_back(std::move(gm));
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("global moments: ") + e.what());
  }
  return stats;
}

}  // namespace vidlabel::features
