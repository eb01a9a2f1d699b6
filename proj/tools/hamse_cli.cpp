// hamse: score/audio feature extraction and knowledge-graph construction.
//
//   hamse parse score.hts [--emit-hts]
//   hamse extract --score s.hts --out dir
//   hamse align --score s.hts --recording a.wav [--self]
//   hamse segment --recording a.wav --out dir
//   hamse emotion --score s.hts --recording a.wav --out dir
//   hamse kg --score s.hts --metadata meta.json --recording a.wav --out dir
//   hamse pipeline --config run.json

#include <cstdio>
#include <iostream>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "hamse/alignment.h"
#include "hamse/error.h"
#include "hamse/hts.h"
#include "hamse/pipeline.h"
#include "hamse/turtle.h"

namespace fs = std::filesystem;
using namespace hamse;

namespace {

struct Flags {
  std::string config;
  std::string score;
  std::vector<std::string> recordings;
  std::string out;
  std::string metadata;
  std::vector<std::string> patterns;
  int n_min = 0, n_max = 0, min_count = 0;
  bool include_rests = false;
  int frame = 0, hop = 0;
  double tempo = 0.0;
  int kernel_half = 0;
  double threshold_sigmas = 0.0;
  int min_distance = 0;
  double merge_distance = 0.0;
};

// Options shared by the pipeline-style subcommands. Explicit flags override
// the --config file.
struct Bound {
  std::map<std::string, CLI::Option*> opts;
  bool given(const std::string& name) const {
    auto it = opts.find(name);
    return it != opts.end() && it->second->count() > 0;
  }
};

Bound add_common(CLI::App* cmd, Flags& f, bool audio, bool mining, bool segmenting) {
  Bound b;
  b.opts["config"] = cmd->add_option("--config", f.config, "JSON config with the same keys as the flags");
  b.opts["score"] = cmd->add_option("--score", f.score, "score file (.hts or .mid)");
  b.opts["out"] = cmd->add_option("--out", f.out, "output directory");
  if (audio) {
    b.opts["recordings"] = cmd->add_option("--recording", f.recordings, "WAV recording (repeatable)");
    b.opts["frame"] = cmd->add_option("--frame", f.frame, "STFT frame length in samples");
    b.opts["hop"] = cmd->add_option("--hop", f.hop, "STFT hop in samples");
    b.opts["tempo"] = cmd->add_option("--tempo", f.tempo, "tempo override in bpm");
  }
  if (mining) {
    b.opts["patterns"] = cmd->add_option("--patterns", f.patterns, "pattern kinds: interval rhythmic melodic");
    b.opts["n_min"] = cmd->add_option("--n-min", f.n_min, "shortest pattern");
    b.opts["n_max"] = cmd->add_option("--n-max", f.n_max, "longest pattern");
    b.opts["min_count"] = cmd->add_option("--min-count", f.min_count, "minimum occurrences");
    b.opts["include_rests"] = cmd->add_flag("--include-rests", f.include_rests, "tokenize rests");
  }
  if (segmenting) {
    b.opts["kernel_half"] = cmd->add_option("--kernel-half", f.kernel_half, "novelty kernel half width (frames)");
    b.opts["threshold_sigmas"] = cmd->add_option("--threshold-sigmas", f.threshold_sigmas, "peak threshold");
    b.opts["min_distance"] = cmd->add_option("--min-distance", f.min_distance, "minimum boundary gap (frames)");
    b.opts["merge_distance"] = cmd->add_option("--merge-distance", f.merge_distance, "label merge distance");
  }
  return b;
}

PipelineConfig resolve(const Flags& f, const Bound& b) {
  PipelineConfig c = b.given("config") ? load_config(f.config) : PipelineConfig{};
  if (b.given("score")) c.score_path = f.score;
  if (b.given("out")) c.output_dir = f.out;
  if (b.given("recordings")) c.recording_paths = f.recordings;
  if (b.given("frame")) c.chroma.frame_len = f.frame;
  if (b.given("hop")) c.chroma.hop = f.hop;
  if (b.given("tempo")) c.tempo_bpm = f.tempo;
  if (b.given("patterns")) {
    c.pattern_kinds.clear();
    for (const auto& name : f.patterns) {
      auto k = parse_pattern_family(name);
      if (!k) throw InputError("unknown pattern kind '" + name + "'");
      c.pattern_kinds.push_back(*k);
    }
  }
  if (b.given("n_min")) c.mining.n_min = f.n_min;
  if (b.given("n_max")) c.mining.n_max = f.n_max;
  if (b.given("min_count")) c.mining.min_count = f.min_count;
  if (b.given("include_rests")) c.include_rests = f.include_rests;
  if (b.given("kernel_half")) c.segmenter.kernel_half = f.kernel_half;
  if (b.given("threshold_sigmas")) c.segmenter.threshold_sigmas = f.threshold_sigmas;
  if (b.given("min_distance")) c.segmenter.min_distance_frames = f.min_distance;
  if (b.given("merge_distance")) c.segmenter.merge_distance = f.merge_distance;
  c.validate();
  return c;
}

Score need_score(const PipelineConfig& c) {
  if (c.score_path.empty()) throw InputError("--score is required");
  return load_score(c.score_path);
}

int cmd_parse(const std::string& path, bool emit_hts) {
  Score s = load_score(path);
  if (emit_hts) {
    std::cout << write_hts(s);
    return 0;
  }
  std::size_t voices = 0;
  for (const auto& p : s.parts) voices += p.voices.size();
  fmt::print("parts: {}\nvoices: {}\nevents: {}\nnotes: {}\nbeats: {}\n", s.parts.size(), voices, s.event_count(),
             s.note_count(), to_string(s.end_beats()));
  for (const auto& p : s.parts) {
    std::size_t events = 0;
    for (const auto& v : p.voices) events += v.events.size();
    fmt::print("  {}: {} voice(s), {} event(s)\n", p.name, p.voices.size(), events);
  }
  return 0;
}

int cmd_extract(const PipelineConfig& c) {
  Score s = need_score(c);
  ExtractResult r = extract_features(s, c);
  write_extract_files(r, c, c.output_dir);
  fmt::print("patterns: {}\nchords: {}\nprogressions: {}\n", r.patterns.size(), r.chords.size(),
             r.progressions.size());
  if (r.key) fmt::print("key: {} ({:.6f})\n", r.key->label(), r.key->correlation);
  return 0;
}

bool is_diagonal(const AlignmentMap& m) {
  for (std::size_t i = 0; i < m.path.size(); ++i)
    if (m.path[i] != PathPoint{i, i}) return false;
  return true;
}

int cmd_align(const PipelineConfig& c, bool self_test) {
  Score s = need_score(c);
  const double tempo = score_tempo(s, c);
  if (self_test) {
    const double hop_s = static_cast<double>(c.chroma.hop) / 22050.0;
    Chromagram sym = chroma_from_score(s, tempo, hop_s);
    AlignmentMap m = align(sym, sym, tempo, "self");
    fmt::print("frames: {}\ntotal_cost: {:.6f}\ndiagonal: {}\n", sym.size(), m.total_cost, is_diagonal(m));
    if (!is_diagonal(m) || m.total_cost != 0.0) {
      std::cerr << "self-alignment is not the identity\n";
      return 1;
    }
    return 0;
  }
  if (c.recording_paths.empty()) throw InputError("--recording is required (or --self)");
  for (const auto& path : c.recording_paths) {
    AudioClip clip = load_wav(path);
    Chromagram audio = chroma_from_audio(clip, c.chroma);
    AlignmentMap m = align(audio, chroma_from_score(s, tempo, audio.hop_s), tempo, recording_id(path));
    write_text(fs::path(c.output_dir) / ("alignment_" + m.recording_ref + ".csv"), anchors_csv(m));
    fmt::print("{}: total_cost {:.6f}, {} anchors\n", m.recording_ref, m.total_cost, m.anchors.size());
  }
  return 0;
}

int cmd_segment(const PipelineConfig& c) {
  if (c.recording_paths.empty()) throw InputError("--recording is required");
  for (const auto& path : c.recording_paths) {
    AudioClip clip = load_wav(path);
    auto segments = segment_structure(chroma_from_audio(clip, c.chroma), clip.duration_s(), c.segmenter);
    write_text(fs::path(c.output_dir) / ("segments_" + recording_id(path) + ".csv"), segments_csv(segments));
    fmt::print("{}: {}\n", recording_id(path), form_string(segments));
  }
  return 0;
}

int cmd_emotion(const PipelineConfig& c) {
  Score s = need_score(c);
  if (c.recording_paths.empty()) throw InputError("--recording is required");
  ExtractResult features = extract_features(s, c);
  for (const auto& path : c.recording_paths) {
    AudioClip clip = load_wav(path);
    EmotionTag tag = classify_emotion(clip, features.key, score_tempo(s, c), features.dissonance_rate);
    const std::string id = recording_id(path);
    write_text(fs::path(c.output_dir) / ("emotion_" + id + ".csv"),
               fmt::format("quadrant,valence,arousal,method\n{},{:.6f},{:.6f},{}\n", to_string(tag.quadrant),
                           tag.valence, tag.arousal, tag.method));
    fmt::print("{}: {} (valence {:.3f}, arousal {:.3f})\n", id, to_string(tag.quadrant), tag.valence, tag.arousal);
  }
  return 0;
}

int cmd_kg(const PipelineConfig& c) {
  Score s = need_score(c);
  ExtractResult features = extract_features(s, c);
  auto recordings = analyze_recordings(s, features, c);
  WorkMetadata meta = load_metadata(c.metadata_path, s);
  complete_metadata(meta, recordings, features);
  auto graph = build_graph(meta, s, {features.patterns, features.chords, features.progressions}, recordings);
  const fs::path dir = c.output_dir;
  write_text(dir / "graph.ttl", rdf::serialize_turtle(graph));
  std::string report = answer_report(graph, default_cq_args(meta, features, recordings));
  write_text(dir / "answers.txt", report);
  fmt::print("triples: {}\n", graph.size());
  std::cout << report;
  return 0;
}

int cmd_pipeline(const PipelineConfig& c) {
  PipelineOutput out = run_pipeline(c);
  fmt::print("patterns: {}\nrecordings: {}\ntriples: {}\n", out.features.patterns.size(), out.recordings.size(),
             out.graph.size());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hamse: symbolic and audio music analysis into a knowledge graph"};
  app.require_subcommand(1);

  std::string parse_path;
  bool emit_hts = false;
  auto* parse = app.add_subcommand("parse", "parse a score and print a summary");
  parse->add_option("file", parse_path, "score file (.hts or .mid)")->required();
  parse->add_flag("--emit-hts", emit_hts, "print the score as HTS instead");

  Flags f_extract, f_align, f_segment, f_emotion, f_kg, f_pipeline;
  auto* extract = app.add_subcommand("extract", "mine patterns, chords, dissonances and key");
  Bound b_extract = add_common(extract, f_extract, false, true, false);

  bool self_test = false;
  auto* align_cmd = app.add_subcommand("align", "align recordings to the score");
  Bound b_align = add_common(align_cmd, f_align, true, false, false);
  align_cmd->add_flag("--self", self_test, "align the score rendering with itself");

  auto* segment = app.add_subcommand("segment", "structural segmentation of recordings");
  Bound b_segment = add_common(segment, f_segment, true, false, true);

  auto* emotion = app.add_subcommand("emotion", "valence/arousal quadrant per recording");
  Bound b_emotion = add_common(emotion, f_emotion, true, true, false);

  auto* kg = app.add_subcommand("kg", "build the knowledge graph and answer the competency questions");
  Bound b_kg = add_common(kg, f_kg, true, true, true);
  b_kg.opts["metadata"] = kg->add_option("--metadata", f_kg.metadata, "work metadata JSON");

  auto* pipeline = app.add_subcommand("pipeline", "run every stage");
  Bound b_pipeline = add_common(pipeline, f_pipeline, true, true, true);
  b_pipeline.opts["metadata"] = pipeline->add_option("--metadata", f_pipeline.metadata, "work metadata JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  auto with_metadata = [](PipelineConfig c, const Flags& f, const Bound& b) {
    if (b.given("metadata")) c.metadata_path = f.metadata;
    return c;
  };

  try {
    if (*parse) return cmd_parse(parse_path, emit_hts);
    if (*extract) return cmd_extract(resolve(f_extract, b_extract));
    if (*align_cmd) return cmd_align(resolve(f_align, b_align), self_test);
    if (*segment) return cmd_segment(resolve(f_segment, b_segment));
    if (*emotion) return cmd_emotion(resolve(f_emotion, b_emotion));
    if (*kg) return cmd_kg(with_metadata(resolve(f_kg, b_kg), f_kg, b_kg));
    if (*pipeline) return cmd_pipeline(with_metadata(resolve(f_pipeline, b_pipeline), f_pipeline, b_pipeline));
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
