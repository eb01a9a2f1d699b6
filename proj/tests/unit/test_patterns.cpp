#include "hamse/patterns.h"

#include <gtest/gtest.h>

#include "test_support.h"

namespace hamse {
namespace {

const PatternKind kInterval{PatternFamily::Interval, false};
const PatternKind kIntervalRests{PatternFamily::Interval, true};
const PatternKind kRhythm{PatternFamily::Rhythmic, false};
const PatternKind kMelodic{PatternFamily::Melodic, false};

std::vector<std::string> keys_of(const Voice& v, PatternKind kind) {
  std::vector<std::string> out;
  for (const auto& t : tokens_of(v, kind)) out.push_back(to_string(t, kind.family));
  return out;
}

TEST(Tokenize, Intervals) {
  Score s = test::melody({"C4", "D4", "C4"});
  EXPECT_EQ(keys_of(s.parts[0].voices[0], kInterval), (std::vector<std::string>{"+2", "-2"}));
}

TEST(Tokenize, RestBreaksAdjacency) {
  Score s = test::melody({"C4", "R", "D4"});
  EXPECT_TRUE(tokens_of(s.parts[0].voices[0], kInterval).empty());
  EXPECT_TRUE(tokenize(s.parts[0].voices[0], kInterval).empty());
}

TEST(Tokenize, RestMarkersWhenIncluded) {
  Score s = test::melody({"C4", "R", "D4"});
  auto runs = tokenize(s.parts[0].voices[0], kIntervalRests);
  ASSERT_EQ(runs.size(), 1u);
  ASSERT_EQ(runs[0].size(), 2u);
  EXPECT_TRUE(runs[0][0].token.rest);
  EXPECT_TRUE(runs[0][1].token.rest);
  EXPECT_EQ(runs[0][0].first_event, 0u);
  EXPECT_EQ(runs[0][1].last_event, 2u);
  EXPECT_EQ(pattern_key(tokens_of(s.parts[0].voices[0], kIntervalRests), PatternFamily::Interval), "R,R");
}

TEST(Tokenize, RhythmicAndMelodic) {
  Score s = test::melody({"C#4", "R", "Bb3"}, Rational(1, 2));
  const auto& v = s.parts[0].voices[0];
  EXPECT_EQ(keys_of(v, kRhythm), (std::vector<std::string>{"1/2", "1/2"}));
  EXPECT_EQ(keys_of(v, {PatternFamily::Rhythmic, true}), (std::vector<std::string>{"1/2", "R:1/2", "1/2"}));
  EXPECT_EQ(keys_of(v, kMelodic), (std::vector<std::string>{"C#:1/2", "A#:1/2"}));
  // rest splits the melodic run in two
  EXPECT_EQ(tokenize(v, kMelodic).size(), 2u);
}

TEST(MinePatterns, CDCDC) {
  Score s = test::melody({"C4", "D4", "C4", "D4", "C4"});
  auto found = mine_patterns(s, kInterval, {2, 2, 2});
  ASSERT_EQ(found.size(), 1u);
  EXPECT_EQ(found[0].key, "+2,-2");
  EXPECT_EQ(found[0].count, 2u);
  ASSERT_EQ(found[0].occurrences.size(), 2u);
  EXPECT_EQ(found[0].occurrences[0].start.abs_beats, Rational(0));
  EXPECT_EQ(found[0].occurrences[0].end.abs_beats, Rational(3));
  EXPECT_EQ(found[0].occurrences[1].start.abs_beats, Rational(2));
}

TEST(MinePatterns, SingleNoteVoice) {
  Score s = test::melody({"C4"});
  EXPECT_TRUE(mine_patterns(s, kInterval, {1, 8, 2}).empty());
}

TEST(MinePatterns, UniformRhythm) {
  Score s = test::melody({"C4", "D4", "E4", "F4", "G4", "A4", "B4", "C5"});
  auto found = mine_patterns(s, kRhythm, {3, 3, 2});
  ASSERT_EQ(found.size(), 1u);
  EXPECT_EQ(found[0].key, "1,1,1");
  EXPECT_EQ(found[0].count, 6u);
}

TEST(MinePatterns, RankingOrder) {
  Score s = test::melody({"C4", "D4", "C4", "D4", "C4", "D4", "E4", "D4", "E4"});
  auto found = mine_patterns(s, kInterval);
  ASSERT_FALSE(found.empty());
  for (std::size_t i = 1; i < found.size(); ++i) {
    const auto& a = found[i - 1];
    const auto& b = found[i];
    EXPECT_TRUE(pattern_rank_less(a.count, a.length, a.key, b.count, b.length, b.key)) << a.key << " / " << b.key;
  }
  EXPECT_EQ(found[0].key, "+2,-2,+2");  // 3 occurrences, longest among ties
}

TEST(MinePatterns, NeverCrossVoices) {
  Score s = test::melody({"C4", "D4"});
  Voice v2{2, {}};
  test::append_events(s.parts[0], v2, {"C4", "D4"}, {Rational(1)});
  s.parts[0].voices.push_back(v2);
  auto found = mine_patterns(s, kInterval, {1, 2, 2});
  ASSERT_EQ(found.size(), 1u);
  EXPECT_EQ(found[0].key, "+2");
  EXPECT_EQ(found[0].occurrences[0].voice, 1);
  EXPECT_EQ(found[0].occurrences[1].voice, 2);
}

TEST(MinePatterns, CountMatchesOccurrences) {
  test::Rng rng(3);
  for (int k = 0; k < 30; ++k) {
    Score s = test::random_score(rng);
    for (auto kind : {kInterval, kIntervalRests, kRhythm, kMelodic})
      for (const auto& set : mine_patterns(s, kind, {1, 5, 2})) {
        EXPECT_EQ(set.count, set.occurrences.size());
        EXPECT_GE(set.count, 2u);
        EXPECT_EQ(set.length, set.tokens.size());
      }
  }
}

TEST(MinePatterns, MatchesNaiveOracle) {
  test::Rng rng(99);
  for (int k = 0; k < 60; ++k) {
    Score s = test::random_score(rng);
    for (auto kind : {kInterval, kIntervalRests, kRhythm, PatternKind{PatternFamily::Rhythmic, true}, kMelodic,
                      PatternKind{PatternFamily::Melodic, true}}) {
      MiningOptions opt{1 + k % 3, 1 + k % 3 + k % 6, 2 + k % 2};
      EXPECT_EQ(test::as_table(mine_patterns(s, kind, opt)), test::naive_patterns(s, kind, opt));
    }
  }
}

}  // namespace
}  // namespace hamse
