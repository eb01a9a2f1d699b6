#include "hamse/alignment.h"

#include <gtest/gtest.h>

#include <cmath>

#include "hamse/error.h"
#include "hamse/pipeline.h"
#include "test_support.h"

namespace hamse {
namespace {

CostMatrix matrix(std::vector<std::vector<double>> rows) {
  CostMatrix m(rows.size(), rows[0].size());
  for (std::size_t i = 0; i < m.rows; ++i)
    for (std::size_t j = 0; j < m.cols; ++j) m.at(i, j) = rows[i][j];
  return m;
}

Score chorale_at_60() {
  Score s = load_score(test::fixture_path("chorale.hts"));
  s.tempos = {{Rational(0), 60.0}};
  return s;
}

TEST(Similarity, Conventions) {
  ChromaVector zero{}, a{}, b{};
  a[0] = 1.0;
  a[7] = 0.5;
  b[3] = 2.0;
  EXPECT_EQ(chroma_similarity(zero, zero), 1.0);
  EXPECT_EQ(chroma_similarity(zero, a), 0.0);
  EXPECT_EQ(chroma_similarity(a, a), 1.0);
  EXPECT_EQ(chroma_similarity(a, b), 0.0);
  EXPECT_EQ(chroma_distance(a, a), 0.0);
  EXPECT_EQ(chroma_distance(a, b), 1.0);
}

TEST(Dtw, TwoByTwo) {
  auto w = dtw(matrix({{0, 1}, {1, 0}}));
  EXPECT_EQ(w.total_cost, 0.0);
  EXPECT_EQ(w.points, (std::vector<PathPoint>{{0, 0}, {1, 1}}));
}

TEST(Dtw, AllOnesPrefersDiagonal) {
  auto w = dtw(matrix({{1, 1, 1}, {1, 1, 1}, {1, 1, 1}}));
  EXPECT_EQ(w.total_cost, 3.0);
  EXPECT_EQ(w.points, (std::vector<PathPoint>{{0, 0}, {1, 1}, {2, 2}}));
}

TEST(Dtw, SingleRowAndEmpty) {
  auto w = dtw(matrix({{0.5, 0.25, 1}}));
  EXPECT_EQ(w.total_cost, 1.75);
  EXPECT_EQ(w.points.size(), 3u);
  EXPECT_THROW(dtw(CostMatrix{}), InputError);
}

TEST(Dtw, MatchesBruteForce) {
  test::Rng rng(123);
  for (int k = 0; k < 60; ++k) {
    std::size_t r = 1 + rng() % 8, c = 1 + rng() % 8;
    auto cost = chroma_cost_matrix(test::random_chromagram(rng, r), test::random_chromagram(rng, c));
    auto w = dtw(cost);
    EXPECT_EQ(w.total_cost, test::brute_force_path_cost(cost));
    EXPECT_TRUE(is_valid_warp_path(w.points, r, c));
    double along = 0.0;
    for (auto [i, j] : w.points) along += cost.at(i, j);
    EXPECT_NEAR(along, w.total_cost, 1e-12);
  }
}

TEST(Dtw, Symmetric) {
  test::Rng rng(8);
  for (int k = 0; k < 30; ++k) {
    auto a = test::random_chromagram(rng, 1 + rng() % 15);
    auto b = test::random_chromagram(rng, 1 + rng() % 15);
    EXPECT_NEAR(dtw(chroma_cost_matrix(a, b)).total_cost, dtw(chroma_cost_matrix(b, a)).total_cost, 1e-12);
  }
}

TEST(WarpPath, Validity) {
  EXPECT_TRUE(is_valid_warp_path({{0, 0}, {0, 1}, {1, 2}}, 2, 3));
  EXPECT_FALSE(is_valid_warp_path({{0, 0}, {1, 2}}, 2, 3));  // skips a column
  EXPECT_FALSE(is_valid_warp_path({{0, 0}, {1, 1}}, 2, 3));  // misses the end
  EXPECT_FALSE(is_valid_warp_path({{0, 1}, {1, 2}}, 2, 3));  // misses the start
  EXPECT_FALSE(is_valid_warp_path({}, 1, 1));
}

TEST(Align, SelfIsDiagonal) {
  Score s = chorale_at_60();
  auto c = chroma_from_score(s, 60.0, 0.1);
  auto map = align(c, c, 60.0);
  EXPECT_EQ(map.total_cost, 0.0);
  ASSERT_EQ(map.path.size(), c.size());
  for (std::size_t i = 0; i < map.path.size(); ++i) EXPECT_EQ(map.path[i], (PathPoint{i, i}));
}

TEST(MapBeats, IdentityBarOne) {
  Score s = chorale_at_60();
  auto c = chroma_from_score(s, 60.0, 0.1);
  auto map = align(c, c, 60.0, "self");
  auto t = map_beats_to_seconds(map, s, {1, Rational(0), 2, Rational(0)});
  EXPECT_NEAR(t.start_s, 0.0, 0.1);
  EXPECT_NEAR(t.end_s, 4.0, 0.1);
  EXPECT_EQ(t.recording_ref, "self");
}

TEST(MapBeats, StretchedTwice) {
  Score s = chorale_at_60();
  auto symbolic = chroma_from_score(s, 60.0, 0.1);
  auto stretched = chroma_from_score(s, 30.0, 0.1);
  auto map = align(stretched, symbolic, 60.0);
  const double hop = 0.1;
  for (int bar = 1; bar <= 12; ++bar) {
    auto t = map_beats_to_seconds(map, s, {bar, Rational(0), bar + 1, Rational(0)});
    EXPECT_NEAR(t.start_s, 8.0 * (bar - 1), 2 * hop) << bar;
    EXPECT_NEAR(t.end_s, 8.0 * bar, 2 * hop) << bar;
  }
}

TEST(MapBeats, EndClampsToLastAnchor) {
  Score s = chorale_at_60();
  auto c = chroma_from_score(s, 60.0, 0.1);
  auto map = align(c, c, 60.0);
  auto t = map_beats_to_seconds(map, s, {12, Rational(0), 13, Rational(0)});
  EXPECT_EQ(t.end_s, map.anchors.back().time_s);
  EXPECT_THROW(map_beats_to_seconds(map, s, {13, Rational(0), 14, Rational(0)}), RangeError);
  EXPECT_THROW(map_beats_to_seconds(map, s, {3, Rational(0), 2, Rational(0)}), RangeError);
}

TEST(MapBeats, MonotoneAnchors) {
  test::Rng rng(4);
  auto a = test::random_chromagram(rng, 40, 0.05);
  auto b = test::random_chromagram(rng, 25, 0.1);
  auto map = align(a, b, 90.0);
  for (std::size_t i = 1; i < map.anchors.size(); ++i) {
    EXPECT_GT(map.anchors[i].abs_beats, map.anchors[i - 1].abs_beats);
    EXPECT_GT(map.anchors[i].time_s, map.anchors[i - 1].time_s);
  }
  double prev = -1.0;
  for (double beat = 0.0; beat < 40.0; beat += 0.25) {
    double t = beats_to_seconds(map, beat);
    EXPECT_GE(t, prev);
    prev = t;
  }
}

TEST(AnchorsCsv, Format) {
  AlignmentMap m;
  m.anchors = {{0.0, 0.0}, {1.5, 0.75}};
  EXPECT_EQ(anchors_csv(m), "abs_beats,time_s\n0.000000,0.000000\n1.500000,0.750000\n");
}

}  // namespace
}  // namespace hamse
