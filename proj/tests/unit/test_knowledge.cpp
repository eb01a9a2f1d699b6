#include "hamse/knowledge.h"

#include <gtest/gtest.h>

#include <fmt/format.h>

#include "hamse/error.h"
#include "hamse/pipeline.h"
#include "hamse/query.h"
#include "hamse/turtle.h"
#include "hamse/vocabulary.h"
#include "test_support.h"

namespace hamse {
namespace {

namespace v = vocab;
using rdf::match;
using rdf::var;

WorkMetadata meta_for_tests() {
  WorkMetadata m;
  m.base_iri = "http://example.org/hamse";
  m.work_id = "w";
  m.title = "Test";
  m.composer_name = "Johann Sebastian Bach";
  m.movement_count = 6;
  return m;
}

std::size_t count(const rdf::TripleGraph& g, const std::vector<rdf::TriplePattern>& q, bool expand = true) {
  return match(g, q, {expand}).size();
}

std::size_t typed_events(const rdf::TripleGraph& g) {
  std::size_t n = 0;
  for (const char* c : {"NoteC", "NoteD", "NoteE", "NoteF", "NoteG", "NoteA", "NoteB", "Rest"})
    n += count(g, {{var("e"), v::type(), v::hamse(c)}}, false);
  return n;
}

TEST(EmitScore, OneNote) {
  auto g = emit_score(test::melody({"E4"}), meta_for_tests());
  EXPECT_EQ(typed_events(g), 1u);
  auto rows = match(g, {{var("e"), v::type(), v::hamse("NoteE")}, {var("e"), v::hamse("hasMidiPitch"), var("p")}});
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_EQ(rows[0].at("p"), rdf::integer_literal(64));
  EXPECT_TRUE(v::closed_vocabulary_violations(g).empty());
}

TEST(EmitScore, RestHasNoPitch) {
  auto g = emit_score(test::melody({"R"}), meta_for_tests());
  auto rests = match(g, {{var("e"), v::type(), v::hamse("Rest")}});
  ASSERT_EQ(rests.size(), 1u);
  const auto& e = rests[0].at("e");
  for (const char* p : {"hasMidiPitch", "hasOctave", "hasAccidental"})
    EXPECT_EQ(count(g, {{e, v::hamse(p), var("x")}}), 0u) << p;
}

TEST(EmitScore, EventCountOnFixture) {
  Score s = load_score(test::fixture_path("chorale.hts"));
  auto g = emit_score(s, meta_for_tests());
  EXPECT_EQ(typed_events(g), s.event_count());
  EXPECT_EQ(count(g, {{var("e"), v::type(), v::hamse("SymbolicEvent")}}), s.event_count());
  EXPECT_EQ(count(g, {{var("p"), v::type(), v::hamse("Part")}}), 4u);
  EXPECT_EQ(count(g, {{var("i"), v::type(), v::tl("AbstractInterval")}}), s.event_count());
  // the representation hangs off the last movement
  EXPECT_EQ(count(g, {{rdf::iri(meta_for_tests().work_iri() + "/movement/6"), v::hamse("hasSymbolicRepresentation"),
                       var("r")}}),
            1u);
}

TEST(EmitScore, AccidentalsAndDynamics) {
  Score s = test::melody({"F#4", "Bb3"});
  s.parts[0].voices[0].events[0].dynamic = Dynamic{"pp", 30};
  auto g = emit_score(s, meta_for_tests());
  EXPECT_EQ(count(g, {{var("e"), v::hamse("hasAccidental"), v::hamse("Sharp")}}), 1u);
  EXPECT_EQ(count(g, {{var("e"), v::hamse("hasAccidental"), v::hamse("Flat")}}), 1u);
  EXPECT_EQ(count(g, {{var("d"), v::hamse("hasLiteralDynamic"), rdf::literal("pp")}}), 1u);
  EXPECT_EQ(count(g, {{var("d"), v::hamse("hasMidiVelocity"), rdf::integer_literal(30)}}), 1u);
}

TEST(EmitScore, RandomScoresStayInVocabulary) {
  test::Rng rng(10);
  for (int k = 0; k < 30; ++k) {
    Score s = test::random_score(rng);
    auto g = emit_score(s, meta_for_tests());
    EXPECT_TRUE(v::closed_vocabulary_violations(g).empty());
    EXPECT_EQ(typed_events(g), s.event_count());
    EXPECT_EQ(rdf::parse_turtle(rdf::serialize_turtle(g)), g);
  }
}

FeatureSet one_pattern(const Score& s) {
  FeatureSet f;
  f.patterns = mine_patterns(s, {PatternFamily::Interval, false}, {2, 2, 2});
  return f;
}

TEST(EmitFeatures, OneIntervalPerOccurrence) {
  Score s = test::melody({"C4", "D4", "C4", "D4", "C4"});
  auto g = emit_features(one_pattern(s), s, meta_for_tests());
  auto rows = match(g, {{var("f"), v::hamse("patternKey"), rdf::literal("+2,-2")},
                        {var("f"), v::hamse("hasOccurrence"), var("o")},
                        {var("o"), v::type(), v::tl("AbstractInterval")}});
  EXPECT_EQ(rows.size(), 2u);
  EXPECT_EQ(count(g, {{var("d"), v::type(), v::tl("Interval")}}, false), 0u);
  EXPECT_EQ(count(g, {{var("d"), v::hamse("startSecond"), var("t")}}), 0u);
  EXPECT_TRUE(v::closed_vocabulary_violations(g).empty());
}

TEST(EmitFeatures, IdentityAlignmentAtSixtyBpm) {
  Score s = test::melody({"C4", "D4", "C4", "D4", "C4"});
  WorkMetadata m = meta_for_tests();
  m.recordings.push_back({"take", SignalKind::Digital});
  auto c = chroma_from_score(s, 60.0, 0.1);
  auto map = align(c, c, 60.0, "take");
  auto g = emit_features(one_pattern(s), s, m, {{"take", map}});
  auto rows = match(g, {{var("o"), v::hamse("startBeat"), var("b")},
                        {var("o"), v::hamse("durationBeats"), var("len")},
                        {var("o"), v::hamse("correspondsTo"), var("d")},
                        {var("d"), v::hamse("startSecond"), var("t0")},
                        {var("d"), v::hamse("endSecond"), var("t1")}});
  ASSERT_EQ(rows.size(), 2u);
  for (const auto& r : rows) {
    double b = std::stod(r.at("b").value);
    double len = std::stod(r.at("len").value);
    EXPECT_EQ(r.at("t0").value, fmt::format("{:.6f}", b));
    EXPECT_EQ(r.at("t1").value, fmt::format("{:.6f}", b + len));
  }
  EXPECT_TRUE(v::closed_vocabulary_violations(g).empty());
  EXPECT_THROW(emit_features(one_pattern(s), s, meta_for_tests(), {{"take", map}}), InputError);
}

TEST(EmitFeatures, ChordsSkipRests) {
  Score s = test::melody({"C4", "R", "E4"});
  FeatureSet f;
  f.chords = chordify(s);
  auto g = emit_features(f, s, meta_for_tests());
  EXPECT_EQ(count(g, {{var("c"), v::type(), v::hamse("Chord")}}), 2u);
}

TEST(EmitWork, ComposerAndMovements) {
  auto g = emit_work(meta_for_tests());
  auto rows = match(g, {{var("c"), v::mo("composer"), var("a")}, {var("a"), v::foaf("name"), var("n")}});
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_EQ(rows[0].at("n"), rdf::literal("Johann Sebastian Bach"));
  EXPECT_EQ(count(g, {{rdf::iri(meta_for_tests().work_iri()), v::mo("movement"), var("m")}}), 6u);
  EXPECT_EQ(count(g, {{var("p"), v::type(), v::mo("Performance")}}), 0u);
  EXPECT_TRUE(v::closed_vocabulary_violations(g).empty());
}

TEST(EmitWork, PerformanceChain) {
  WorkMetadata m = meta_for_tests();
  m.performance = PerformanceMeta{{"Soprano voice"}, {"Chamber Choir"}};
  m.recordings.push_back({"r1", SignalKind::DigitalAndAnalog});
  auto g = emit_work(m);
  EXPECT_EQ(count(g, {{var("p"), v::type(), v::mo("Performance")},
                      {var("p"), v::mo("produced_sound"), var("s")},
                      {var("r"), v::mo("records"), var("s")},
                      {var("r"), v::mo("produced_signal"), var("sig")}}),
            2u);
  EXPECT_EQ(count(g, {{var("d"), v::mo("sampled_version_of"), var("a")}}), 1u);
  EXPECT_EQ(count(g, {{var("s"), v::type(), v::mo("Signal")}}), 2u);
  EXPECT_TRUE(v::closed_vocabulary_violations(g).empty());
}

TEST(EmitWork, Validation) {
  WorkMetadata m = meta_for_tests();
  m.movement_count = 0;
  EXPECT_THROW(emit_work(m), InputError);
  m = meta_for_tests();
  m.score_movement = 7;
  EXPECT_THROW(emit_work(m), InputError);
  m = meta_for_tests();
  m.recordings = {{"a", SignalKind::Digital}, {"a", SignalKind::Analog}};
  EXPECT_THROW(emit_work(m), InputError);
  m = meta_for_tests();
  m.work_id = "has space";
  EXPECT_THROW(emit_work(m), InputError);
}

TEST(Emission, ByteIdentical) {
  Score s = load_score(test::fixture_path("chorale.hts"));
  WorkMetadata m = meta_for_tests();
  FeatureSet f;
  f.patterns = mine_patterns(s, {PatternFamily::Melodic, false});
  f.chords = chordify(s);
  f.progressions = mine_progressions(f.chords);
  auto a = rdf::serialize_turtle(build_graph(m, s, f, {}));
  auto b = rdf::serialize_turtle(build_graph(m, s, f, {}));
  EXPECT_EQ(a, b);
  EXPECT_EQ(rdf::serialize_turtle(rdf::parse_turtle(a)), a);
}

TEST(BeatsLiteral, Forms) {
  EXPECT_EQ(beats_literal(Rational(3, 2)), rdf::literal("1.5", rdf::kXsd + "decimal"));
  EXPECT_EQ(beats_literal(Rational(4)), rdf::literal("4.0", rdf::kXsd + "decimal"));
  EXPECT_EQ(beats_literal(Rational(1, 3)), rdf::literal("1/3"));
}

TEST(Slug, Forms) {
  EXPECT_EQ(slug("Johann Sebastian Bach"), "johann-sebastian-bach");
  EXPECT_EQ(slug("  A--b!"), "a-b");
  EXPECT_EQ(parse_signal_kind("both"), SignalKind::DigitalAndAnalog);
  EXPECT_FALSE(parse_signal_kind("tape"));
}

}  // namespace
}  // namespace hamse
