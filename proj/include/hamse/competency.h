#pragma once

#include <map>
#include <string>
#include <vector>

#include "hamse/rdf.h"

namespace hamse {

enum class CompetencyQuestion {
  Tonality = 1,
  Composer,
  MovementCount,
  DurationSeconds,
  DurationBars,
  EmotionCategory,
  BarCorrespondence,
  PatternFrequencyInCategory,
  PatternPredominantCategory,
  TopPatternsInCategory,
  CommonStructuresForPattern,
  TopComposerForPattern,
};

inline constexpr int kCompetencyQuestionCount = 12;

std::string question_text(CompetencyQuestion cq);

/// Argument names: work (IRI), recording (IRI, optional), bar, pattern
/// (pattern key), kind (interval | rhythmic | melodic | progression, optional),
/// quadrant (Q1..Q4), limit (optional, default 10).
using CqArgs = std::map<std::string, std::string>;

struct CqResult {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  bool empty() const { return rows.empty(); }
};

/// Each question runs one or more match() calls plus counting/argmax.
/// Throws InputError naming the parameter when a required argument is missing
/// or malformed. Row order is deterministic; for argmax questions the first
/// row is the answer.
CqResult answer_cq(const rdf::TripleGraph& g, CompetencyQuestion cq, const CqArgs& args);

/// All twelve questions as a plain-text report. Questions about recordings
/// report "no recording" when the work has none.
std::string answer_report(const rdf::TripleGraph& g, const CqArgs& args);

}  // namespace hamse
