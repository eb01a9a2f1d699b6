#pragma once

#include <filesystem>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "hamse/alignment.h"
#include "hamse/audio.h"
#include "hamse/harmony.h"
#include "hamse/patterns.h"
#include "hamse/query.h"
#include "hamse/score.h"

namespace hamse::test {

using Rng = std::mt19937_64;

/// Single part, single voice, one event per entry. "R" is a rest.
Score melody(const std::vector<std::string>& notes, Rational duration = Rational(1), Metre metre = {});

/// Appends events end to end in `voice`, placing them against `part`'s sections.
void append_events(Part& part, Voice& voice, const std::vector<std::string>& notes,
                   const std::vector<Rational>& durations);

struct RandomScoreOptions {
  int max_parts = 3;
  int max_voices = 2;
  int max_events = 64;  // over the whole score
  bool allow_gaps = true;
};

/// Valid random score that HTS can represent exactly.
Score random_score(Rng& rng, const RandomScoreOptions& options = {});

/// Notes drawn from the scale on `tonic_pc` with random durations.
Score random_diatonic_score(Rng& rng, int tonic_pc, Mode mode, int events);

/// Every pitch moved by `semitones` and respelled.
Score transpose(const Score& score, int semitones);

AudioClip sine(double hz, double seconds, int sample_rate = 22050, double amplitude = 0.5);

/// Additive sine rendering of every note at `tempo_bpm`.
AudioClip render_sines(const Score& score, double tempo_bpm, int sample_rate = 22050, double amplitude = 0.1);

Chromagram random_chromagram(Rng& rng, std::size_t frames, double hop_s = 0.1);

/// Minimum cost over every monotone path, by explicit enumeration.
double brute_force_path_cost(const CostMatrix& cost);

struct OracleOccurrence {
  std::string part;
  int voice = 1;
  Rational start;
  Rational end;
  bool operator==(const OracleOccurrence&) const = default;
  bool operator<(const OracleOccurrence& o) const;
};

/// Pattern key -> sorted occurrences.
using PatternTable = std::map<std::string, std::vector<OracleOccurrence>>;

/// Enumerates every window straight from the events and groups windows by
/// pairwise key comparison. Deliberately slow.
PatternTable naive_patterns(const Score& score, PatternKind kind, const MiningOptions& options);

PatternTable as_table(const std::vector<PatternOccurrenceSet>& mined);

/// Every k-tuple of triples, kept when it unifies with the patterns. No
/// subclass expansion. Sorted and deduplicated like match().
std::vector<rdf::Binding> brute_force_match(const rdf::TripleGraph& g, const std::vector<rdf::TriplePattern>& patterns);

/// Blocks of identical one-hot columns: (pitch class, frames) per block.
Chromagram block_chromagram(const std::vector<std::pair<int, int>>& blocks, double hop_s = 0.5);

/// Fresh empty directory under the system temp dir.
std::filesystem::path scratch_dir(const std::string& name);

std::filesystem::path fixture_path(const std::string& name);

}  // namespace hamse::test
