#pragma once

#include <compare>
#include <string>
#include <vector>

#include "hamse/score.h"

namespace hamse {

enum class PatternFamily { Interval, Rhythmic, Melodic };

struct PatternKind {
  PatternFamily family = PatternFamily::Interval;
  bool include_rests = false;
  bool operator==(const PatternKind&) const = default;
};

std::string to_string(PatternFamily family);

/// One symbol of a tokenized voice.
///
/// Interval tokens carry `value` (signed semitones); melodic tokens carry
/// `value` (pitch class) and `duration`; rhythmic tokens carry `duration`.
/// Rest tokens only appear when rests are included; rhythmic and melodic rest
/// tokens keep the rest's duration, interval rest tokens carry nothing.
struct Token {
  bool rest = false;
  int value = 0;
  Rational duration;

  bool operator==(const Token&) const = default;
};

bool operator<(const Token& a, const Token& b);

std::string to_string(const Token& t, PatternFamily family);

/// Canonical comma-joined rendering of a token sequence, e.g. "+2,-2".
std::string pattern_key(const std::vector<Token>& tokens, PatternFamily family);

/// A token plus the span of score time it covers. `first_event` and
/// `last_event` index the voice's events.
struct SourcedToken {
  Token token;
  std::size_t first_event = 0;
  std::size_t last_event = 0;
};

/// Tokenized voice as maximal runs of adjacent tokens. n-grams never cross a
/// run boundary; a rest breaks the run when rests are excluded.
using TokenRuns = std::vector<std::vector<SourcedToken>>;

TokenRuns tokenize(const Voice& voice, PatternKind kind);

/// Flattened view of tokenize() for callers that don't care about runs.
std::vector<Token> tokens_of(const Voice& voice, PatternKind kind);

struct PatternOccurrence {
  std::string part;
  int voice = 1;
  Position start;
  Position end;
  bool operator==(const PatternOccurrence&) const = default;
};

struct PatternOccurrenceSet {
  PatternKind kind;
  std::vector<Token> tokens;
  std::string key;
  std::size_t length = 0;
  std::vector<PatternOccurrence> occurrences;
  std::size_t count = 0;
  bool operator==(const PatternOccurrenceSet&) const = default;
};

struct MiningOptions {
  int n_min = 2;
  int n_max = 8;
  int min_count = 2;
};

/// Every n-gram (n_min <= n <= n_max) that occurs at least min_count times
/// within single voices, aggregated over the score. Sorted by count desc,
/// length desc, key asc; occurrences sorted by start.
std::vector<PatternOccurrenceSet> mine_patterns(const Score& score, PatternKind kind,
                                                const MiningOptions& options = {});

/// Ordering shared by mine_patterns and mine_progressions.
bool pattern_rank_less(std::size_t count_a, std::size_t len_a, const std::string& key_a, std::size_t count_b,
                       std::size_t len_b, const std::string& key_b);

/// Occurrence order: start beat, then part order, then voice.
void sort_occurrences(std::vector<PatternOccurrence>& occ, const Score& score);

}  // namespace hamse
