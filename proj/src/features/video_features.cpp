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

#include "vidlabel/features/video_features.h"

#include <cmath>

#include "vidlabel/common/errors.h"

namespace vidlabel::features {

std::string_view SegmentName(Segment segment) {
  switch (segment) {
    case Segment::kWhole: return "whole";
    case Segment::kFirstHalf: return "first_half";
    case Segment::kSecondHalf: return "second_half";
  }
  return "whole";
}

Segment ParseSegment(std::string_view name) {
  if (name == "whole") return Segment::kWhole;
  if (name == "first_half") return Segment::kFirstHalf;
  if (name == "second_half") return Segment::kSecondHalf;
  throw SchemaError("unknown segment '" + std::string(name) + "'");
}

namespace {

template <typename FrameAt>
Moments MomentsOf(int n, int dim, FrameAt frame_at) {
  Moments m;
  m.mean.assign(static_cast<std::size_t>(dim), 0.0);
  m.std.assign(static_cast<std::size_t>(dim), 0.0);
  m.x3.assign(static_cast<std::size_t>(dim), 0.0);
  for (int t = 0; t < n; ++t) {
    const auto f = frame_at(t);
    for (int d = 0; d < dim; ++d) m.mean[d] += f[d];
  }
  for (double& v : m.mean) v /= n;
  for (int t = 0; t < n; ++t) {
    const auto f = frame_at(t);
    for (int d = 0; d < dim; ++d) {
      const double c = f[d] - m.mean[d];
      m.std[d] += c * c;
      m.x3[d] += c * c * c;
    }
  }
  for (int d = 0; d < dim; ++d) {
    m.std[d] = std::sqrt(m.std[d] / n);
    m.x3[d] /= n;
  }
  return m;
}

}  // namespace

Moments ComputeMoments(const std::vector<std::vector<double>>& frames) {
  if (frames.empty()) throw ArgumentError("moments of an empty frame sequence");
  const std::size_t dim = frames.front().size();
  for (const auto& f : frames) {
    if (f.size() != dim) throw ArgumentError("frames have differing dimensions");
  }
  return MomentsOf(static_cast<int>(frames.size()), static_cast<int>(dim),
                   [&](int t) { return frames[static_cast<std::size_t>(t)].data(); });
}

Moments ComputeMoments(const dataio::FrameRecord& record, int begin, int end) {
  if (begin < 0 || end > record.num_frames() || begin >= end) {
    throw ArgumentError("empty or out-of-range frame interval");
  }
  return MomentsOf(end - begin, record.dim,
                   [&](int t) { return record.frame(begin + t).data(); });
}

namespace {

VideoFeatures RowOf(const dataio::FrameRecord& record, Segment segment, int begin, int end) {
  Moments m = ComputeMoments(record, begin, end);
  VideoFeatures row;
  row.id = record.id;
  row.segment = segment;
  row.mean = std::move(m.mean);
  row.std = std::move(m.std);
  row.x3 = std::move(m.x3);
  row.num_frames = end - begin;
  row.labels = record.labels;
  return row;
}

}  // namespace

VideoFeatures WholeVideo(const dataio::FrameRecord& record) {
  return RowOf(record, Segment::kWhole, 0, record.num_frames());
}

std::vector<VideoFeatures> AugmentSplit(const dataio::FrameRecord& record) {
  const int n = record.num_frames();
  std::vector<VideoFeatures> rows;
  rows.push_back(WholeVideo(record));
  if (n >= 2) {
    const int mid = (n + 1) / 2;
    rows.push_back(RowOf(record, Segment::kFirstHalf, 0, mid));
    rows.push_back(RowOf(record, Segment::kSecondHalf, mid, n));
  }
  return rows;
}

}  // namespace vidlabel::features
