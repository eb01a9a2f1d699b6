#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "hamse/patterns.h"
#include "hamse/score.h"

namespace hamse {

struct ChordSlice {
  Position onset;
  Rational duration;
  std::vector<int> pitches;        // sorted, unique
  std::vector<int> pitch_classes;  // sorted, unique
  std::string label;               // "rest" when nothing sounds

  bool is_rest() const { return pitches.empty(); }
  Rational end_beats() const { return onset.abs_beats + duration; }
};

/// Vertical slices at every note onset/offset across all parts. Gaps where
/// nothing sounds become rest slices, so slices tile [first onset, last offset).
/// Positions are expressed in the first part's bars. A score without notes
/// yields an empty list.
std::vector<ChordSlice> chordify(const Score& score);

/// Root + quality for the seven templates (maj, min, dim, aug, dom7, maj7,
/// min7), else "pcset{...}". When several roots fit (augmented triads) the
/// bass pitch class wins if it is a candidate root, otherwise the lowest root.
/// Throws DomainError for an empty set.
std::string label_chord(const std::vector<int>& pitch_classes, std::optional<int> bass_pc = std::nullopt);

/// "C", "C#", ... "B".
std::string pitch_class_name(int pc);

struct ChordProgression {
  std::vector<std::string> labels;
  std::string key;  // labels joined with ','
  std::vector<Position> occurrences;
  std::vector<Rational> occurrence_ends;  // abs beats where the last chord stops
  std::size_t count = 0;
};

/// Drops rest slices, collapses repeated labels and mines label n-grams with
/// the same contract as mine_patterns.
std::vector<ChordProgression> mine_progressions(const std::vector<ChordSlice>& slices,
                                                const MiningOptions& options = {});

struct DissonanceReport {
  int interval_class = 0;
  std::size_t count = 0;
  std::vector<Position> example_sites;  // one per slice containing the class
};

/// Interval classes |p1 - p2| mod 12 in {1, 2, 6, 10, 11}, counted over every
/// unordered pitch pair of every slice. Sorted by count desc, then class asc.
std::vector<DissonanceReport> find_dissonances(const std::vector<ChordSlice>& slices);

bool is_dissonant_interval_class(int ic);

/// Fraction of sounding slices that contain at least one dissonant pair.
double dissonance_rate(const std::vector<ChordSlice>& slices);

enum class Mode { Major, Minor };

std::string to_string(Mode mode);

struct KeyCandidate {
  int tonic_pc = 0;
  Mode mode = Mode::Major;
  double correlation = 0.0;
};

struct KeyEstimate {
  int tonic_pc = 0;
  Mode mode = Mode::Major;
  double correlation = 0.0;
  KeyCandidate runner_up;

  /// "F major".
  std::string label() const;
};

/// Krumhansl-Kessler probe-tone profiles, index 0 = tonic.
extern const std::array<double, 12> kMajorProfile;
extern const std::array<double, 12> kMinorProfile;

/// Duration-weighted pitch-class histogram over all notes.
std::array<double, 12> pitch_class_histogram(const Score& score);

/// All 24 (tonic, mode) correlations, ordered by tonic then major before minor.
std::vector<KeyCandidate> key_correlations(const std::array<double, 12>& histogram);

/// Best of the 24 profile correlations. Ties go to the lower tonic, then to
/// major. Throws DomainError when the score has no notes.
KeyEstimate estimate_key(const Score& score);

}  // namespace hamse
