#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "hamse/audio.h"
#include "hamse/competency.h"
#include "hamse/harmony.h"
#include "hamse/knowledge.h"
#include "hamse/patterns.h"
#include "hamse/segmentation.h"

namespace hamse {

struct PipelineConfig {
  std::string score_path;
  std::vector<std::string> recording_paths;
  std::string output_dir = "out";
  std::optional<std::string> metadata_path;

  std::vector<PatternFamily> pattern_kinds{PatternFamily::Interval, PatternFamily::Rhythmic,
                                           PatternFamily::Melodic};
  MiningOptions mining;
  bool include_rests = false;

  AudioChromaOptions chroma;
  std::optional<double> tempo_bpm;  // overrides the score's initial tempo

  SegmenterOptions segmenter;

  /// Range checks on the numeric options. Throws InputError.
  void validate() const;
};

/// Keys mirror the CLI flags: score, recordings, out, metadata, patterns,
/// n_min, n_max, min_count, include_rests, frame, hop, tempo, kernel_half,
/// threshold_sigmas, min_distance, merge_distance. Unknown keys are rejected.
PipelineConfig config_from_json(const nlohmann::json& j);
PipelineConfig load_config(const std::filesystem::path& path);

std::optional<PatternFamily> parse_pattern_family(std::string_view text);

/// Reads a file into bytes/text. Throws InputError when it cannot be opened.
std::vector<std::uint8_t> read_bytes(const std::filesystem::path& path);
std::string read_text(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, const std::string& text);

/// .hts, or .mid/.midi/.smf. An empty file is an input error.
Score load_score(const std::filesystem::path& path);
AudioClip load_wav(const std::filesystem::path& path);

/// Recording id derived from a file name: slug of the stem.
std::string recording_id(const std::filesystem::path& path);

/// Sidecar schema: work_id, title, composer, movement_count, score_movement,
/// genre, key, arrangement, published_score, performance {instruments,
/// musicians}, recordings [{id, signal}]. Missing fields fall back to the
/// score (work id, title).
WorkMetadata metadata_from_json(const nlohmann::json& j, const Score& score);
WorkMetadata load_metadata(const std::optional<std::string>& path, const Score& score);

struct ExtractResult {
  std::vector<PatternOccurrenceSet> patterns;  // all requested families
  std::vector<ChordSlice> chords;
  std::vector<ChordProgression> progressions;
  std::vector<DissonanceReport> dissonances;
  double dissonance_rate = 0.0;
  std::optional<KeyEstimate> key;
};

/// Throws DomainError for a score without notes.
ExtractResult extract_features(const Score& score, const PipelineConfig& config);

/// patterns_<family>.csv, chords.csv, progressions.csv, dissonances.csv, key.csv.
void write_extract_files(const ExtractResult& r, const PipelineConfig& config, const std::filesystem::path& dir);

double score_tempo(const Score& score, const PipelineConfig& config);

/// Alignment against the score rendered at the audio hop, structure and
/// emotion for one recording.
RecordingAnalysis analyze_recording(const AudioClip& clip, const std::string& id, const Score& score,
                                    const ExtractResult& features, const PipelineConfig& config);

/// Loads and analyzes every recording concurrently; output order follows the
/// input order.
std::vector<RecordingAnalysis> analyze_recordings(const Score& score, const ExtractResult& features,
                                                  const PipelineConfig& config);

void write_recording_files(const RecordingAnalysis& r, const std::filesystem::path& dir);

/// Adds listed recordings missing from the metadata and fills the key label
/// from the estimate when the sidecar has none.
void complete_metadata(WorkMetadata& meta, const std::vector<RecordingAnalysis>& recordings,
                       const ExtractResult& features);

/// Default CQ arguments for the report: the work, bar 1, the top pattern of
/// the first requested family and the work's predominant quadrant.
CqArgs default_cq_args(const WorkMetadata& meta, const ExtractResult& features,
                       const std::vector<RecordingAnalysis>& recordings);

struct PipelineOutput {
  ExtractResult features;
  std::vector<RecordingAnalysis> recordings;
  WorkMetadata metadata;
  rdf::TripleGraph graph;
  std::string report;
};

/// Whole pipeline; writes every artifact into config.output_dir.
PipelineOutput run_pipeline(const PipelineConfig& config);

/// CSV field quoting: fields with a comma, quote or newline are quoted.
std::string csv_field(const std::string& s);

}  // namespace hamse
