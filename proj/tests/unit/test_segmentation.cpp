#include "hamse/segmentation.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "hamse/alignment.h"
#include "hamse/error.h"
#include "test_support.h"

namespace hamse {
namespace {

TEST(SelfSimilarity, IdenticalColumns) {
  Chromagram c = test::block_chromagram({{4, 6}});
  auto s = self_similarity(c);
  ASSERT_EQ(s.size, 6u);
  for (double x : s.data) EXPECT_EQ(x, 1.0);
}

TEST(SelfSimilarity, OrthogonalBlocks) {
  auto s = self_similarity(test::block_chromagram({{0, 3}, {6, 2}}));
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t j = 0; j < 5; ++j) EXPECT_EQ(s.at(i, j), (i < 3) == (j < 3) ? 1.0 : 0.0);
}

TEST(SelfSimilarity, DirectFormula) {
  test::Rng rng(1);
  Chromagram c = test::random_chromagram(rng, 3);
  auto s = self_similarity(c);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) {
      double dot = 0, na = 0, nb = 0;
      for (int k = 0; k < 12; ++k) {
        dot += c.frames[i][k] * c.frames[j][k];
        na += c.frames[i][k] * c.frames[i][k];
        nb += c.frames[j][k] * c.frames[j][k];
      }
      EXPECT_NEAR(s.at(i, j), dot / std::sqrt(na * nb), 1e-12);
      EXPECT_EQ(s.at(i, j), s.at(j, i));
    }
  EXPECT_THROW(self_similarity(test::block_chromagram({{0, 1}})), InputError);
}

TEST(Novelty, NoContrast) {
  for (double x : novelty_curve(self_similarity(test::block_chromagram({{2, 30}})), 4)) EXPECT_EQ(x, 0.0);
}

TEST(Novelty, TwoBlocksPeakAtBoundary) {
  auto nov = novelty_curve(self_similarity(test::block_chromagram({{0, 20}, {7, 20}})), 4);
  ASSERT_EQ(nov.size(), 40u);
  auto top = std::max_element(nov.begin(), nov.end()) - nov.begin();
  EXPECT_NEAR(static_cast<double>(top), 20.0, 1.0);
  EXPECT_EQ(std::count(nov.begin(), nov.end(), nov[top]), 1);
  for (double x : nov) EXPECT_GE(x, 0.0);
  for (int i = 0; i < 4; ++i) {
    EXPECT_EQ(nov[i], 0.0);
    EXPECT_EQ(nov[39 - i], 0.0);
  }
}

TEST(Novelty, TooFewFrames) {
  EXPECT_THROW(novelty_curve(self_similarity(test::block_chromagram({{0, 8}})), 4), InputError);
  EXPECT_NO_THROW(novelty_curve(self_similarity(test::block_chromagram({{0, 9}})), 4));
}

TEST(PickBoundaries, Flat) {
  auto b = pick_boundaries(std::vector<double>(30, 0.25), 0.5);
  EXPECT_EQ(b, (std::vector<double>{0.0, 15.0}));
}

TEST(PickBoundaries, SinglePeak) {
  std::vector<double> nov(40, 0.0);
  nov[20] = 1.0;
  auto b = pick_boundaries(nov, 0.5);
  EXPECT_EQ(b, (std::vector<double>{0.0, 10.0, 20.0}));
}

TEST(PickBoundaries, MinimumDistanceKeepsLarger) {
  std::vector<double> nov(40, 0.0);
  nov[18] = 0.8;
  nov[21] = 1.0;
  auto b = pick_boundaries(nov, 0.5);
  EXPECT_EQ(b, (std::vector<double>{0.0, 10.5, 20.0}));
  nov[18] = 1.2;
  EXPECT_EQ(pick_boundaries(nov, 0.5), (std::vector<double>{0.0, 9.0, 20.0}));
}

TEST(PickBoundaries, ExplicitEnd) {
  std::vector<double> nov(10, 0.0);
  EXPECT_EQ(pick_boundaries(nov, 0.1, 1.234), (std::vector<double>{0.0, 1.234}));
}

TEST(LabelSegments, ABA) {
  Chromagram c = test::block_chromagram({{0, 20}, {5, 20}, {0, 20}});
  auto segs = label_segments(c, {0.0, 10.0, 20.0, 30.0});
  ASSERT_EQ(segs.size(), 3u);
  EXPECT_EQ(form_string(segs), "A B A");
  EXPECT_EQ(segs[1].start_s, 10.0);
}

TEST(LabelSegments, OneSegment) {
  auto segs = label_segments(test::block_chromagram({{3, 10}}), {0.0, 5.0});
  ASSERT_EQ(segs.size(), 1u);
  EXPECT_EQ(segs[0].label, "A");
}

TEST(LabelSegments, AllDistinct) {
  std::vector<std::pair<int, int>> blocks;
  std::vector<double> bounds{0.0};
  for (int k = 0; k < 12; ++k) {
    blocks.push_back({k, 2});
    bounds.push_back(k + 1.0);
  }
  auto segs = label_segments(test::block_chromagram(blocks), bounds);
  ASSERT_EQ(segs.size(), 12u);
  EXPECT_EQ(form_string(segs), "A B C D E F G H I J K L");
}

TEST(LabelSegments, NamesPastZ) {
  // 28 single-frame segments pointing in distinct directions
  Chromagram c;
  c.hop_s = 1.0;
  std::vector<double> bounds{0.0};
  for (int k = 0; k < 28; ++k) {
    ChromaVector v{};
    v[k % 12] = 1.0;
    v[(k / 12 + k % 12 + 1) % 12] = (k / 12 + 1) * 3.0;
    c.frames.push_back(v);
    bounds.push_back(k + 1.0);
  }
  SegmenterOptions tight;
  tight.merge_distance = 1e-6;
  auto segs = label_segments(c, bounds, tight);
  ASSERT_EQ(segs.size(), 28u);
  EXPECT_EQ(segs[26].label, "AA");
  EXPECT_EQ(segs[27].label, "AB");
}

TEST(SegmentStructure, TwoTextures) {
  Chromagram c = test::block_chromagram({{0, 20}, {7, 20}}, 0.25);
  auto segs = segment_structure(c, 10.0);
  ASSERT_EQ(segs.size(), 2u);
  EXPECT_NEAR(segs[0].end_s, 5.0, 0.25);
  EXPECT_EQ(segs[0].start_s, 0.0);
  EXPECT_EQ(segs[1].end_s, 10.0);
  EXPECT_EQ(form_string(segs), "A B");
}

TEST(SegmentStructure, ABAForm) {
  Chromagram c = test::block_chromagram({{0, 24}, {7, 24}, {0, 24}}, 0.25);
  auto segs = segment_structure(c, 18.0);
  ASSERT_EQ(segs.size(), 3u);
  EXPECT_EQ(form_string(segs), "A B A");
  EXPECT_NEAR(segs[1].start_s, 6.0, 0.25);
  EXPECT_NEAR(segs[2].start_s, 12.0, 0.25);
}

TEST(SegmentStructure, TilesDuration) {
  test::Rng rng(12);
  for (int k = 0; k < 20; ++k) {
    Chromagram c = test::random_chromagram(rng, 20 + rng() % 60, 0.1);
    double dur = c.size() * 0.1;
    auto segs = segment_structure(c, dur);
    ASSERT_FALSE(segs.empty());
    EXPECT_EQ(segs.front().start_s, 0.0);
    EXPECT_EQ(segs.back().end_s, dur);
    for (std::size_t i = 1; i < segs.size(); ++i) EXPECT_EQ(segs[i - 1].end_s, segs[i].start_s);
  }
}

TEST(SegmentsCsv, Format) {
  std::vector<Segment> s{{0.0, 1.5, "A"}, {1.5, 3.0, "B"}};
  EXPECT_EQ(segments_csv(s), "start_s,end_s,label\n0.000000,1.500000,A\n1.500000,3.000000,B\n");
}

}  // namespace
}  // namespace hamse
