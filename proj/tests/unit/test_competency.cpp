#include "hamse/competency.h"

#include <gtest/gtest.h>

#include "hamse/error.h"
#include "hamse/knowledge.h"
#include "hamse/turtle.h"
#include "test_support.h"

namespace hamse {
namespace {

struct WorkPlan {
  std::string id;
  std::string composer;
  bool with_pattern;
  Quadrant quadrant;
  std::vector<std::string> form;
};

const std::string kBase = "http://example.org/cq";

std::vector<Segment> segments_for(const std::vector<std::string>& form) {
  std::vector<Segment> out;
  for (std::size_t i = 0; i < form.size(); ++i) out.push_back({i * 2.0, i * 2.0 + 2.0, form[i]});
  return out;
}

// Each work: one score, one recording aligned at 60 bpm, one emotion tag.
rdf::TripleGraph corpus(const std::vector<WorkPlan>& works) {
  rdf::TripleGraph g;
  for (const auto& w : works) {
    Score s = w.with_pattern ? test::melody({"C4", "D4", "C4", "D4", "C4"}) : test::melody({"C4", "E4", "C4", "E4", "C4"});
    WorkMetadata m;
    m.base_iri = kBase;
    m.work_id = w.id;
    m.title = w.id;
    m.composer_name = w.composer;
    m.key_label = "C major";
    m.recordings.push_back({"take", SignalKind::Digital});
    FeatureSet f;
    f.patterns = mine_patterns(s, {PatternFamily::Interval, false}, {2, 2, 2});
    auto c = chroma_from_score(s, 60.0, 0.1);
    RecordingAnalysis rec;
    rec.id = "take";
    rec.duration_s = 5.0;
    rec.alignment = align(c, c, 60.0, "take");
    rec.segments = segments_for(w.form);
    rec.emotion = EmotionTag{w.quadrant, 0.5, 0.5, "heuristic-v1"};
    g.merge(build_graph(m, s, f, {rec}));
  }
  return g;
}

const std::vector<WorkPlan> kWorks{
    {"a1", "Composer A", true, Quadrant::Q1, {"A", "B", "A"}},
    {"a2", "Composer A", true, Quadrant::Q1, {"A", "B"}},
    {"b1", "Composer B", true, Quadrant::Q3, {"A", "B", "A"}},
    {"b2", "Composer B", false, Quadrant::Q1, {"A"}},
};

CqArgs args_for(const std::string& work) {
  return {{"work", kBase + "/" + work}, {"bar", "1"}, {"pattern", "+2,-2"}, {"kind", "interval"}, {"quadrant", "Q1"}};
}

using Rows = std::vector<std::vector<std::string>>;

TEST(Cq, WorkLevelQuestions) {
  auto g = corpus(kWorks);
  auto a = args_for("a1");
  EXPECT_EQ(answer_cq(g, CompetencyQuestion::Tonality, a).rows, (Rows{{"C major"}}));
  EXPECT_EQ(answer_cq(g, CompetencyQuestion::Composer, a).rows, (Rows{{"Composer A"}}));
  EXPECT_EQ(answer_cq(g, CompetencyQuestion::MovementCount, a).rows, (Rows{{"1"}}));
  EXPECT_EQ(answer_cq(g, CompetencyQuestion::DurationSeconds, a).rows,
            (Rows{{kBase + "/a1/recording/take", "5.000000"}}));
  EXPECT_EQ(answer_cq(g, CompetencyQuestion::DurationBars, a).rows, (Rows{{"2"}}));
  EXPECT_EQ(answer_cq(g, CompetencyQuestion::EmotionCategory, a).rows, (Rows{{"Q1", "1"}}));
  EXPECT_EQ(answer_cq(g, CompetencyQuestion::BarCorrespondence, a).rows,
            (Rows{{kBase + "/a1/recording/take", "0.000000", "4.000000"}}));
  a["bar"] = "2";
  EXPECT_EQ(answer_cq(g, CompetencyQuestion::BarCorrespondence, a).rows,
            (Rows{{kBase + "/a1/recording/take", "4.000000", "5.000000"}}));
}

TEST(Cq, PatternQuestions) {
  auto g = corpus(kWorks);
  auto a = args_for("a1");
  // Q1 holds a1, a2, b2; the pattern (2 occurrences each) is in a1 and a2
  EXPECT_EQ(answer_cq(g, CompetencyQuestion::PatternFrequencyInCategory, a).rows,
            (Rows{{"3", "2", "4", "0.666667"}}));
  EXPECT_EQ(answer_cq(g, CompetencyQuestion::PatternPredominantCategory, a).rows,
            (Rows{{"Q1", "4", "2"}, {"Q3", "2", "1"}}));
  EXPECT_EQ(answer_cq(g, CompetencyQuestion::TopPatternsInCategory, a).rows,
            (Rows{{"+2,-2", "IntervalPattern", "4", "2"}, {"+4,-4", "IntervalPattern", "2", "1"}}));
  a["limit"] = "1";
  EXPECT_EQ(answer_cq(g, CompetencyQuestion::TopPatternsInCategory, a).rows.size(), 1u);
  EXPECT_EQ(answer_cq(g, CompetencyQuestion::CommonStructuresForPattern, a).rows,
            (Rows{{"A B A", "2"}, {"A B", "1"}}));
}

TEST(Cq, TopComposerForPattern) {
  auto g = corpus(kWorks);
  auto rows = answer_cq(g, CompetencyQuestion::TopComposerForPattern, args_for("a1")).rows;
  EXPECT_EQ(rows, (Rows{{"Composer A", "2"}, {"Composer B", "1"}}));
}

TEST(Cq, KindFilter) {
  auto g = corpus(kWorks);
  auto a = args_for("a1");
  a["kind"] = "melodic";
  EXPECT_TRUE(answer_cq(g, CompetencyQuestion::TopComposerForPattern, a).empty());
  a["kind"] = "harmonic";
  EXPECT_THROW(answer_cq(g, CompetencyQuestion::TopComposerForPattern, a), InputError);
}

TEST(Cq, MissingArguments) {
  auto g = corpus({kWorks[0]});
  try {
    answer_cq(g, CompetencyQuestion::BarCorrespondence, {{"work", kBase + "/a1"}});
    FAIL();
  } catch (const InputError& e) {
    EXPECT_STREQ(e.what(), "CQ7 needs argument 'bar'");
  }
  EXPECT_THROW(answer_cq(g, CompetencyQuestion::Composer, {}), InputError);
  EXPECT_THROW(answer_cq(g, CompetencyQuestion::TopPatternsInCategory, {{"quadrant", "Q9"}}), InputError);
  EXPECT_THROW(answer_cq(g, CompetencyQuestion::BarCorrespondence, {{"work", "x"}, {"bar", "one"}}), InputError);
}

TEST(Cq, SurvivesTurtleRoundTrip) {
  auto g = corpus(kWorks);
  auto back = rdf::parse_turtle(rdf::serialize_turtle(g));
  for (int i = 1; i <= kCompetencyQuestionCount; ++i) {
    auto cq = static_cast<CompetencyQuestion>(i);
    EXPECT_EQ(answer_cq(back, cq, args_for("a2")).rows, answer_cq(g, cq, args_for("a2")).rows) << i;
  }
}

TEST(Report, NoRecording) {
  Score s = test::melody({"C4", "D4", "C4", "D4", "C4"});
  WorkMetadata m;
  m.base_iri = kBase;
  m.work_id = "solo";
  m.composer_name = "Composer A";
  auto g = build_graph(m, s, {}, {});
  std::string report = answer_report(g, {{"work", m.work_iri()}, {"bar", "1"}});
  for (int cq : {4, 6, 7}) {
    auto at = report.find("CQ" + std::to_string(cq) + " ");
    ASSERT_NE(at, std::string::npos);
    auto next = report.find('\n', at);
    EXPECT_EQ(report.compare(next + 1, 15, "  no recording\n"), 0) << cq;
  }
  EXPECT_NE(report.find("-> Composer A"), std::string::npos);
  EXPECT_NE(report.find("CQ8 "), std::string::npos);
  EXPECT_NE(report.find("not answered: CQ8 needs argument 'pattern'"), std::string::npos);
}

}  // namespace
}  // namespace hamse
