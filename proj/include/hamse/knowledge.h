#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hamse/alignment.h"
#include "hamse/emotion.h"
#include "hamse/harmony.h"
#include "hamse/patterns.h"
#include "hamse/rdf.h"
#include "hamse/score.h"
#include "hamse/segmentation.h"

namespace hamse {

enum class SignalKind { Digital, Analog, DigitalAndAnalog };

std::string to_string(SignalKind k);
std::optional<SignalKind> parse_signal_kind(std::string_view text);

struct RecordingMeta {
  std::string id;
  SignalKind signal = SignalKind::Digital;
};

struct PerformanceMeta {
  std::vector<std::string> instruments;
  std::vector<std::string> musicians;
};

/// HAMSE_BASE_IRI if set, else http://example.org/hamse.
std::string default_base_iri();

/// Lowercase ASCII, runs of anything else collapsed to '-'.
std::string slug(std::string_view text);

struct WorkMetadata {
  std::string base_iri = default_base_iri();
  std::string work_id = "work";
  std::string title;
  std::string composer_name;
  int movement_count = 1;
  std::optional<std::string> genre;
  std::optional<std::string> key_label;
  std::optional<std::string> arrangement;
  std::optional<PerformanceMeta> performance;
  std::vector<RecordingMeta> recordings;
  /// 1-based movement the score represents; 0 means the last one.
  int score_movement = 0;
  bool published_score = false;

  std::string work_iri() const;
  std::vector<std::string> movement_iris() const;
  std::string score_movement_iri() const;
  std::string representation_iri(int n = 1) const;
  std::string recording_iri(const std::string& id) const;

  /// Throws InputError on an empty work id, movement_count < 1, an
  /// out-of-range score_movement, or duplicate/empty recording ids.
  void validate() const;
};

/// Work, composition, composer, movements, genre, key, arrangement, and the
/// performance -> sound -> recording -> signal chain. A performance node is
/// created whenever recordings exist.
rdf::TripleGraph emit_work(const WorkMetadata& meta);

/// Representation, parts, sections, voices and events. Every event gets a
/// tl:AbstractInterval with its bar, beat, start beat and duration.
rdf::TripleGraph emit_score(const Score& score, const WorkMetadata& meta, int rep = 1);

struct FeatureSet {
  std::vector<PatternOccurrenceSet> patterns;
  std::vector<ChordSlice> chords;
  std::vector<ChordProgression> progressions;
};

struct AlignmentLink {
  std::string recording_id;
  AlignmentMap map;
};

/// One feature resource per pattern/chord/progression, one abstract interval
/// per occurrence and, per supplied alignment, one discrete interval in
/// seconds linked through the recording's tl:TimeLineMap.
rdf::TripleGraph emit_features(const FeatureSet& features, const Score& score, const WorkMetadata& meta,
                               const std::vector<AlignmentLink>& alignments = {}, int rep = 1);

struct RecordingAnalysis {
  std::string id;
  double duration_s = 0.0;
  std::optional<AlignmentMap> alignment;
  std::vector<Segment> segments;
  std::optional<EmotionTag> emotion;
};

/// Recording timeline and extent, the bar-by-bar timeline map (when aligned),
/// structure segments and the emotion tag.
rdf::TripleGraph emit_recording(const RecordingAnalysis& rec, const Score& score, const WorkMetadata& meta,
                                int rep = 1);

/// emit_work + emit_score + emit_features + emit_recording for each recording.
rdf::TripleGraph build_graph(const WorkMetadata& meta, const Score& score, const FeatureSet& features,
                             const std::vector<RecordingAnalysis>& recordings);

/// Exact beats: xsd:decimal when the expansion terminates, else "n/d" string.
rdf::Term beats_literal(const Rational& r);

}  // namespace hamse
