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

#ifndef VIDLABEL_FEATURES_VIDEO_FEATURES_H_
#define VIDLABEL_FEATURES_VIDEO_FEATURES_H_

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "vidlabel/dataio/frame_record.h"

namespace vidlabel::features {

enum class Segment { kWhole, kFirstHalf, kSecondHalf };

std::string_view SegmentName(Segment segment);
Segment ParseSegment(std::string_view name);

// Video-level row derived from a frame record or one half of it.
struct VideoFeatures {
  std::string id;
  Segment segment = Segment::kWhole;
  std::vector<double> mean;
  std::vector<double> std;
  std::vector<double> x3;  // third central moment
  int num_frames = 0;
  std::vector<int> labels;

  bool operator==(const VideoFeatures&) const = default;
};

struct Moments {
  std::vector<double> mean;
  std::vector<double> std;  // population standard deviation
  std::vector<double> x3;
};

// Per-dimension mean, population std and third central moment. Throws
// ArgumentError on an empty sequence or ragged frames.
Moments ComputeMoments(const std::vector<std::vector<double>>& frames);

// Same, over frames [begin, end) of `record`.
Moments ComputeMoments(const dataio::FrameRecord& record, int begin, int end);

// Whole-video row, plus first and second halves when the video has at least
// two frames. An odd frame goes to the first half.
std::vector<VideoFeatures> AugmentSplit(const dataio::FrameRecord& record);

// Whole-video row only.
VideoFeatures WholeVideo(const dataio::FrameRecord& record);

}  // namespace vidlabel::features

#endif  // VIDLABEL_FEATURES_VIDEO_FEATURES_H_
