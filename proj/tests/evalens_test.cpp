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

#include <gtest/gtest.h>

#include <cmath>

#include "support/fixtures.h"
#include "support/oracles.h"
#include "vidlabel/common/errors.h"
#include "vidlabel/common/random.h"
#include "vidlabel/evalens/baseline.h"
#include "vidlabel/evalens/ensemble.h"
#include "vidlabel/evalens/metrics.h"
#include "vidlabel/evalens/predictions.h"

namespace vidlabel::evalens {
namespace {

using testing::BruteForceGap;
using testing::OraclePrediction;

PredictionSet Set(std::map<std::string, std::vector<LabelScore>> videos) {
  PredictionSet s;
  s.videos = std::move(videos);
  for (auto& [id, scores] : s.videos) RankScores(scores, 0);
  return s;
}

TEST(GapTest, PerfectSinglePrediction) {
  EXPECT_DOUBLE_EQ(Gap(Set({{"v", {{3, 0.9}}}}), {{"v", {3}}}), 1.0);
}

TEST(GapTest, HandRankedList) {
  const double gap = Gap(Set({{"v", {{1, 0.9}, {5, 0.8}, {2, 0.7}}}}), {{"v", {1, 2}}});
  EXPECT_NEAR(gap, 5.0 / 6.0, 1e-15);
}

TEST(GapTest, NoHitsIsZero) {
  EXPECT_EQ(Gap(Set({{"a", {{0, 0.5}}}, {"b", {{1, 0.4}}}}), {{"a", {2}}, {"b", {3}}}), 0.0);
}

TEST(GapTest, UnpredictedVideosStillCountAsPositives) {
  // One of two positives is recovered at rank 1.
  EXPECT_DOUBLE_EQ(Gap(Set({{"a", {{0, 0.5}}}}), {{"a", {0}}, {"b", {1}}}), 0.5);
}

TEST(GapTest, Errors) {
  EXPECT_THROW(Gap(Set({{"x", {{0, 0.5}}}}), {{"a", {0}}}), ArgumentError);
  EXPECT_THROW(Gap(Set({}), {}), ArgumentError);
}

TEST(GapTest, TiesBreakByVideoThenLabel) {
  // Equal confidences: "a" ranks before "b", so its miss costs the hit of "b"
  // half its precision.
  const auto preds = Set({{"a", {{0, 0.5}}}, {"b", {{0, 0.5}}}});
  EXPECT_DOUBLE_EQ(Gap(preds, {{"a", {}}, {"b", {0}}}), 0.5);
  EXPECT_DOUBLE_EQ(Gap(preds, {{"a", {0}}, {"b", {}}}), 1.0);
}

TEST(GapTest, PositiveCapLimitsDenominator) {
  const auto preds = Set({{"a", {{0, 0.9}}}});
  const GroundTruth truth = {{"a", {0, 1, 2, 3}}};
  EXPECT_DOUBLE_EQ(Gap(preds, truth), 0.25);
  GapOptions capped;
  capped.max_positives_per_video = 2;
  EXPECT_DOUBLE_EQ(Gap(preds, truth, capped), 0.5);
}

struct RandomInstance {
  PredictionSet preds;
  GroundTruth truth;
  std::vector<OraclePrediction> flat;
  std::map<std::string, std::set<int>> truth_sets;
};

RandomInstance MakeInstance(Rng& rng) {
  RandomInstance r;
  const int videos = 1 + static_cast<int>(UniformIndex(rng, 10));
  const int labels = 1 + static_cast<int>(UniformIndex(rng, 8));
  const int top_k = 1 + static_cast<int>(UniformIndex(rng, 5));
  for (int v = 0; v < videos; ++v) {
    const std::string id = "v" + std::to_string(v);
    std::vector<int> truth;
    for (int l = 0; l < labels; ++l) {
      if (UniformUnit(rng) < 0.3) truth.push_back(l);
    }
    r.truth[id] = truth;
    r.truth_sets[id] = std::set<int>(truth.begin(), truth.end());
    std::vector<LabelScore> scores;
    for (int l = 0; l < labels; ++l) {
      // Coarse confidences so that ties are common.
      scores.push_back({l, static_cast<double>(UniformIndex(rng, 6)) / 5.0});
    }
    RankScores(scores, top_k);
    for (const auto& s : scores) r.flat.push_back({id, s.label, s.confidence});
    r.preds.videos[id] = scores;
  }
  return r;
}

TEST(GapTest, MatchesBruteForceOracleOnRandomInstances) {
  Rng rng(DeriveSeed(2024, "gap-oracle"));
  for (int i = 0; i < 500; ++i) {
    const RandomInstance inst = MakeInstance(rng);
    ASSERT_NEAR(Gap(inst.preds, inst.truth), BruteForceGap(inst.flat, inst.truth_sets), 1e-12)
        << "instance " << i;
  }
}

TEST(GapTest, InvariantUnderMonotoneTransforms) {
  Rng rng(7);
  for (int i = 0; i < 100; ++i) {
    const RandomInstance inst = MakeInstance(rng);
    PredictionSet half = inst.preds, cube = inst.preds;
    for (auto& [id, s] : half.videos) {
      for (auto& e : s) e.confidence /= 2.0;
    }
    for (auto& [id, s] : cube.videos) {
      for (auto& e : s) e.confidence = std::pow(e.confidence, 3);
    }
    const double g = Gap(inst.preds, inst.truth);
    EXPECT_EQ(Gap(half, inst.truth), g);
    EXPECT_EQ(Gap(cube, inst.truth), g);
  }
}

TEST(CorrelationTest, Identity) {
  const auto p = Set({{"a", {{0, 0.3}, {4, 0.2}}}, {"b", {{1, 0.9}}}});
  EXPECT_NEAR(Correlation(p, p), 1.0, 1e-12);
}

TEST(CorrelationTest, DisjointSupportsGiveZero) {
  EXPECT_EQ(Correlation(Set({{"a", {{0, 0.3}}}}), Set({{"a", {{1, 0.3}}}})), 0.0);
}

TEST(CorrelationTest, HandComputedFixture) {
  EXPECT_DOUBLE_EQ(Correlation(Set({{"v", {{0, 0.8}, {1, 0.6}}}}), Set({{"v", {{0, 0.6}, {1, 0.8}}}})),
                   0.96);
}

TEST(CorrelationTest, SymmetricAndScaleInvariant) {
  Rng rng(11);
  for (int i = 0; i < 50; ++i) {
    const auto a = MakeInstance(rng).preds;
    PredictionSet b = a;
    for (auto& [id, s] : b.videos) {
      for (auto& e : s) e.confidence = UniformUnit(rng);
      RankScores(s, 0);
    }
    PredictionSet scaled = b;
    for (auto& [id, s] : scaled.videos) {
      for (auto& e : s) e.confidence *= 0.37;
    }
    const double ab = Correlation(a, b);
    EXPECT_NEAR(ab, Correlation(b, a), 1e-12);
    EXPECT_NEAR(ab, Correlation(a, scaled), 1e-12);
    EXPECT_GE(ab, -1.0 - 1e-12);
    EXPECT_LE(ab, 1.0 + 1e-12);
  }
}

TEST(CorrelationTest, MatchesDenseCosinePerVideo) {
  const auto a = Set({{"v", {{0, 0.5}, {2, 0.4}, {3, 0.1}}}, {"w", {{1, 1.0}}}});
  const auto b = Set({{"v", {{2, 0.7}, {3, 0.2}, {4, 0.6}}}, {"w", {{1, 0.2}, {0, 0.1}}}});
  const double v = testing::Cosine({0.5, 0, 0.4, 0.1, 0}, {0, 0, 0.7, 0.2, 0.6});
  const double w = testing::Cosine({0, 1.0}, {0.1, 0.2});
  EXPECT_NEAR(Correlation(a, b), (v + w) / 2.0, 1e-15);
}

TEST(CorrelationTest, TopKTruncatesEachSide) {
  const auto a = Set({{"v", {{0, 0.9}, {1, 0.8}}}});
  const auto b = Set({{"v", {{1, 0.9}, {0, 0.8}}}});
  EXPECT_EQ(Correlation(a, b, 1), 0.0);
}

TEST(CorrelationTest, ZeroVectorsAreSkippedAndDisjointSetsRejected) {
  const auto a = Set({{"v", {{0, 0.0}}}, {"w", {{1, 0.5}}}});
  const auto b = Set({{"v", {{0, 0.4}}}, {"w", {{1, 0.2}}}});
  EXPECT_DOUBLE_EQ(Correlation(a, b), 1.0);
  EXPECT_THROW(Correlation(Set({{"x", {}}}), Set({{"y", {}}})), ArgumentError);
  EXPECT_THROW(Correlation(a, b, 0), ArgumentError);
}

TEST(CorrelationMatrixTest, IdenticalFilesAndSymmetry) {
  const auto p = Set({{"a", {{0, 0.3}, {1, 0.2}}}});
  const auto m = CorrelationMatrix({p, p});
  for (const auto& row : m) {
    for (double x : row) EXPECT_NEAR(x, 1.0, 1e-12);
  }
  Rng rng(3);
  std::vector<PredictionSet> sets;
  const auto base = MakeInstance(rng).preds;
  for (int i = 0; i < 4; ++i) {
    PredictionSet s = base;
    for (auto& [id, scores] : s.videos) {
      for (auto& e : scores) e.confidence = UniformUnit(rng);
      RankScores(scores, 0);
    }
    sets.push_back(s);
  }
  const auto big = CorrelationMatrix(sets);
  for (std::size_t i = 0; i < big.size(); ++i) {
    EXPECT_EQ(big[i][i], 1.0);
    for (std::size_t j = 0; j < big.size(); ++j) EXPECT_NEAR(big[i][j], big[j][i], 1e-12);
  }
  EXPECT_THROW(CorrelationMatrix({p}), ArgumentError);
}

TEST(EnsembleTest, SingleMemberIsIdentityAfterTopK) {
  const auto p = Set({{"a", {{0, 0.3}, {1, 0.2}, {2, 0.1}}}});
  const auto r = Ensemble({p}, {1.0}, 2);
  EXPECT_EQ(r.predictions.videos.at("a"), (std::vector<LabelScore>{{0, 0.3}, {1, 0.2}}));
}

TEST(EnsembleTest, IdenticalMembersReproduceTheMember) {
  const auto p = Set({{"a", {{0, 0.312345}, {7, 0.2}}}, {"b", {{3, 0.999999}}}});
  EXPECT_EQ(Ensemble({p, p}, {0.7, 0.3}, 20).predictions, p);
  EXPECT_EQ(Ensemble({p, p, p}, {1, 1, 1}, 20).predictions, Ensemble({p}, {1}, 20).predictions);
}

TEST(EnsembleTest, WeightedAverageOfSparseVectors) {
  const auto a = Set({{"v", {{0, 0.8}, {1, 0.4}}}});
  const auto b = Set({{"v", {{1, 0.6}, {2, 0.5}}}});
  const auto r = Ensemble({a, b}, {3, 1}, 20).predictions.videos.at("v");
  ASSERT_EQ(r.size(), 3u);
  EXPECT_EQ(r[0].label, 0);
  EXPECT_DOUBLE_EQ(r[0].confidence, 0.6);
  EXPECT_EQ(r[1].label, 1);
  EXPECT_DOUBLE_EQ(r[1].confidence, 0.45);
  EXPECT_EQ(r[2].label, 2);
  EXPECT_DOUBLE_EQ(r[2].confidence, 0.125);
}

TEST(EnsembleTest, FamilyWeightsGiveWellFormedOutput) {
  Rng rng(5);
  std::vector<PredictionSet> families;
  const auto base = MakeInstance(rng).preds;
  for (int f = 0; f < 3; ++f) {
    PredictionSet s = base;
    for (auto& [id, scores] : s.videos) {
      for (auto& e : scores) e.confidence = UniformUnit(rng);
      RankScores(scores, 0);
    }
    families.push_back(s);
  }
  const auto r = Ensemble(families, {0.40, 0.36, 0.24}, 3);
  EXPECT_EQ(r.dropped_videos, 0);
  EXPECT_EQ(r.predictions.videos.size(), base.videos.size());
  EXPECT_NO_THROW(ValidatePredictions(r.predictions));
  for (const auto& [id, scores] : r.predictions.videos) {
    EXPECT_LE(scores.size(), 3u);
    for (const auto& s : scores) {
      EXPECT_GE(s.confidence, 0.0);
      EXPECT_LE(s.confidence, 1.0);
    }
  }
}

TEST(EnsembleTest, DropsVideosNotSharedAndValidatesWeights) {
  const auto a = Set({{"x", {{0, 0.5}}}, {"y", {{0, 0.5}}}});
  const auto b = Set({{"x", {{0, 0.5}}}});
  const auto r = Ensemble({a, b}, {1, 1}, 20);
  EXPECT_EQ(r.dropped_videos, 1);
  EXPECT_EQ(r.predictions.videos.count("y"), 0u);
  EXPECT_THROW(Ensemble({a, b}, {0, 0}, 20), ConfigError);
  EXPECT_THROW(Ensemble({a, b}, {-1, 2}, 20), ConfigError);
  EXPECT_THROW(Ensemble({}, {}, 20), ConfigError);
}

TEST(EnsembleSpecTest, ParsesAndResolvesPaths) {
  const auto j = nlohmann::json::parse(
      R"({"members": [{"file": "a.csv", "weight": 0.4}, {"file": "/abs/b.csv"}], "top_k": 5})");
  const auto spec = EnsembleSpecFromJson(j, "/base");
  ASSERT_EQ(spec.members.size(), 2u);
  EXPECT_EQ(spec.members[0].file, "/base/a.csv");
  EXPECT_EQ(spec.members[1].file, "/abs/b.csv");
  EXPECT_EQ(spec.members[1].weight, 1.0);
  EXPECT_EQ(spec.top_k, 5);
  EXPECT_THROW(EnsembleSpecFromJson(nlohmann::json::parse(R"({"members": [], "x": 1})"), "/"),
               ConfigError);
  EXPECT_THROW(EnsembleSpecFromJson(nlohmann::json::parse(R"({"members": []})"), "/"), ConfigError);
  EXPECT_THROW(
      EnsembleSpecFromJson(nlohmann::json::parse(R"({"members": [{"file": "a", "weight": 0}]})"), "/"),
      ConfigError);
}

TEST(EnsembleSpecTest, RunsFromFiles) {
  testing::TempDir dir;
  const auto p = Set({{"a", {{0, 0.3}}}});
  WritePredictions(dir / "m.csv", p);
  testing::WriteText(dir / "spec.json", R"({"members": [{"file": "m.csv", "weight": 2}]})");
  EXPECT_EQ(Ensemble(LoadEnsembleSpec(dir / "spec.json")).predictions, p);
}

TEST(PredictionFileTest, RoundTripAndFormat) {
  const auto p = Set({{"vid1", {{4, 0.5}, {2, 0.25}}}, {"vid0", {{1, 1.0}}}});
  const std::string text = EncodePredictions(p);
  EXPECT_EQ(text, "VideoId,LabelConfidencePairs\nvid0,1 1.000000\nvid1,4 0.500000 2 0.250000\n");
  EXPECT_EQ(ParsePredictions(text), p);
}

TEST(PredictionFileTest, RejectsMalformedInput) {
  EXPECT_THROW(ParsePredictions("id,pairs\n"), ParseError);
  EXPECT_THROW(ParsePredictions("VideoId,LabelConfidencePairs\nv,1\n"), ParseError);
  EXPECT_THROW(ParsePredictions("VideoId,LabelConfidencePairs\nv,x 0.5\n"), ParseError);
  EXPECT_THROW(ParsePredictions("VideoId,LabelConfidencePairs\nv,1 0.5 1 0.4\n"), SchemaError);
  EXPECT_THROW(ParsePredictions("VideoId,LabelConfidencePairs\nv,1 1.5\n"), SchemaError);
  EXPECT_THROW(ParsePredictions("VideoId,LabelConfidencePairs\nv,1 0.5\nv,2 0.5\n"), SchemaError);
}

TEST(PredictionFileTest, ReRanksOnRead) {
  const auto p = ParsePredictions("VideoId,LabelConfidencePairs\nv,3 0.2 1 0.2 0 0.9\n");
  EXPECT_EQ(p.videos.at("v"), (std::vector<LabelScore>{{0, 0.9}, {1, 0.2}, {3, 0.2}}));
}

TEST(TopKTest, UniformProbabilitiesPickLowestLabels) {
  const std::vector<double> probs(10, 0.5);
  const auto top = TopK(probs.data(), 10, 4);
  ASSERT_EQ(top.size(), 4u);
  for (int i = 0; i < 4; ++i) EXPECT_EQ(top[static_cast<std::size_t>(i)].label, i);
}

TEST(TopKTest, RoundsToFileResolution) {
  const std::vector<double> probs = {0.1234567, 0.7654321};
  const auto top = TopK(probs.data(), 2, 2);
  EXPECT_EQ(top[0], (LabelScore{1, 0.765432}));
  EXPECT_EQ(top[1], (LabelScore{0, 0.123457}));
}

TEST(GroundTruthTest, ParsesJsonLines) {
  const auto t = ParseGroundTruth("{\"id\": \"a\", \"labels\": [3, 1, 3]}\n\n{\"id\": \"b\", \"labels\": []}\n");
  EXPECT_EQ(t.at("a"), (std::vector<int>{1, 3}));
  EXPECT_TRUE(t.at("b").empty());
  EXPECT_THROW(ParseGroundTruth("{\"id\": \"a\", \"labels\": []}\n{\"id\": \"a\", \"labels\": []}\n"),
               SchemaError);
  EXPECT_THROW(ParseGroundTruth("{\"id\": 1}\n"), ParseError);
}

TEST(BaselineTest, RanksLabelsByTrainingFrequency) {
  const GroundTruth train = {{"a", {0, 2}}, {"b", {2}}, {"c", {1, 2}}, {"d", {0}}};
  const auto freq = LabelFrequencies(train, 4);
  EXPECT_EQ(freq, (std::vector<double>{0.5, 0.25, 0.75, 0.0}));
  const auto base = FrequencyBaseline(freq, {{"x", {2}}, {"y", {0}}}, 2);
  EXPECT_EQ(base.videos.at("x"), (std::vector<LabelScore>{{2, 0.75}, {0, 0.5}}));
  EXPECT_DOUBLE_EQ(Gap(base, {{"x", {2}}, {"y", {0}}}), 0.75);
}

}  // namespace
}  // namespace vidlabel::evalens
