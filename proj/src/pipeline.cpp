#include "hamse/pipeline.h"

#include <algorithm>
#include <fstream>
#include <future>
#include <map>
#include <sstream>

#include <fmt/format.h>

#include "hamse/alignment.h"
#include "hamse/emotion.h"
#include "hamse/error.h"
#include "hamse/hts.h"
#include "hamse/midi.h"
#include "hamse/turtle.h"

namespace hamse {

namespace fs = std::filesystem;
using nlohmann::json;

std::optional<PatternFamily> parse_pattern_family(std::string_view text) {
  if (text == "interval") return PatternFamily::Interval;
  if (text == "rhythmic") return PatternFamily::Rhythmic;
  if (text == "melodic") return PatternFamily::Melodic;
  return std::nullopt;
}

void PipelineConfig::validate() const {
  if (mining.n_min < 1) throw InputError("n_min must be at least 1");
  if (mining.n_max < mining.n_min) throw InputError("n_max must not be below n_min");
  if (mining.min_count < 2) throw InputError("min_count must be at least 2");
  if (pattern_kinds.empty()) throw InputError("no pattern kinds selected");
  if (chroma.frame_len < 16 || chroma.hop < 1) throw InputError("frame must be >= 16 and hop >= 1");
  if (tempo_bpm && !(*tempo_bpm > 0.0)) throw InputError("tempo must be positive");
  if (segmenter.kernel_half < 1) throw InputError("kernel_half must be positive");
  if (segmenter.min_distance_frames < 1) throw InputError("min_distance must be positive");
  if (segmenter.merge_distance < 0.0) throw InputError("merge_distance must not be negative");
}

PipelineConfig config_from_json(const json& j) {
  if (!j.is_object()) throw InputError("config must be a JSON object");
  PipelineConfig c;
  try {
    for (const auto& [key, value] : j.items()) {
      if (key == "score") c.score_path = value.get<std::string>();
      else if (key == "recordings") c.recording_paths = value.get<std::vector<std::string>>();
      else if (key == "out") c.output_dir = value.get<std::string>();
      else if (key == "metadata") c.metadata_path = value.get<std::string>();
      else if (key == "patterns") {
        c.pattern_kinds.clear();
        for (const auto& name : value.get<std::vector<std::string>>()) {
          auto f = parse_pattern_family(name);
          if (!f) throw InputError("unknown pattern kind '" + name + "'");
          c.pattern_kinds.push_back(*f);
        }
      }
      else if (key == "n_min") c.mining.n_min = value.get<int>();
      else if (key == "n_max") c.mining.n_max = value.get<int>();
      else if (key == "min_count") c.mining.min_count = value.get<int>();
      else if (key == "include_rests") c.include_rests = value.get<bool>();
      else if (key == "frame") c.chroma.frame_len = value.get<int>();
      else if (key == "hop") c.chroma.hop = value.get<int>();
      else if (key == "tempo") c.tempo_bpm = value.get<double>();
      else if (key == "kernel_half") c.segmenter.kernel_half = value.get<int>();
      else if (key == "threshold_sigmas") c.segmenter.threshold_sigmas = value.get<double>();
      else if (key == "min_distance") c.segmenter.min_distance_frames = value.get<int>();
      else if (key == "merge_distance") c.segmenter.merge_distance = value.get<double>();
      else throw InputError("unknown config key '" + key + "'");
    }
  } catch (const json::exception& e) {
    throw InputError(std::string("config: ") + e.what());
  }
  return c;
}

PipelineConfig load_config(const fs::path& path) {
  try {
    return config_from_json(json::parse(read_text(path)));
  } catch (const json::parse_error& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

std::vector<std::uint8_t> read_bytes(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << text;
}

Score load_score(const fs::path& path) {
  std::string ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
  auto bytes = read_bytes(path);
  if (bytes.empty()) throw InputError(path.string() + " is empty");
  if (ext == ".hts") return parse_hts(std::string_view(reinterpret_cast<const char*>(bytes.data()), bytes.size()));
  if (ext == ".mid" || ext == ".midi" || ext == ".smf") return parse_smf(bytes);
  throw UnsupportedFormat("unknown score extension '" + ext + "' (expected .hts or .mid)");
}

AudioClip load_wav(const fs::path& path) { return read_wav(read_bytes(path)); }

std::string recording_id(const fs::path& path) { return slug(path.stem().string()); }

WorkMetadata metadata_from_json(const json& j, const Score& score) {
  if (!j.is_object()) throw InputError("metadata must be a JSON object");
  WorkMetadata m;
  m.work_id = slug(score.work_ref);
  m.title = score.title.value_or("");
  try {
    for (const auto& [key, value] : j.items()) {
      if (key == "work_id") m.work_id = value.get<std::string>();
      else if (key == "title") m.title = value.get<std::string>();
      else if (key == "composer") m.composer_name = value.get<std::string>();
      else if (key == "movement_count") m.movement_count = value.get<int>();
      else if (key == "score_movement") m.score_movement = value.get<int>();
      else if (key == "genre") m.genre = value.get<std::string>();
      else if (key == "key") m.key_label = value.get<std::string>();
      else if (key == "arrangement") m.arrangement = value.get<std::string>();
      else if (key == "published_score") m.published_score = value.get<bool>();
      else if (key == "performance") {
        PerformanceMeta p;
        if (value.contains("instruments")) p.instruments = value.at("instruments").get<std::vector<std::string>>();
        if (value.contains("musicians")) p.musicians = value.at("musicians").get<std::vector<std::string>>();
        m.performance = p;
      } else if (key == "recordings") {
        for (const auto& r : value) {
          RecordingMeta rm;
          rm.id = r.at("id").get<std::string>();
          if (r.contains("signal")) {
            auto kind = parse_signal_kind(r.at("signal").get<std::string>());
            if (!kind) throw InputError("metadata: unknown signal kind for recording '" + rm.id + "'");
            rm.signal = *kind;
          }
          m.recordings.push_back(rm);
        }
      } else {
        throw InputError("metadata: unknown key '" + key + "'");
      }
    }
  } catch (const json::exception& e) {
    throw InputError(std::string("metadata: ") + e.what());
  }
  m.validate();
  return m;
}

WorkMetadata load_metadata(const std::optional<std::string>& path, const Score& score) {
  if (!path) return metadata_from_json(json::object(), score);
  try {
    return metadata_from_json(json::parse(read_text(*path)), score);
  } catch (const json::parse_error& e) {
    throw InputError(*path + ": " + e.what());
  }
}

ExtractResult extract_features(const Score& score, const PipelineConfig& config) {
  validate(score);
  ExtractResult r;
  r.key = estimate_key(score);  // also rejects scores without notes
  for (PatternFamily f : config.pattern_kinds) {
    auto sets = mine_patterns(score, PatternKind{f, config.include_rests}, config.mining);
    r.patterns.insert(r.patterns.end(), sets.begin(), sets.end());
  }
  r.chords = chordify(score);
  r.progressions = mine_progressions(r.chords, config.mining);
  r.dissonances = find_dissonances(r.chords);
  r.dissonance_rate = dissonance_rate(r.chords);
  return r;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

void write_extract_files(const ExtractResult& r, const PipelineConfig& config, const fs::path& dir) {
  for (PatternFamily f : config.pattern_kinds) {
    std::string csv = "key,count,length\n";
    for (const auto& p : r.patterns)
      if (p.kind.family == f) csv += fmt::format("{},{},{}\n", csv_field(p.key), p.count, p.length);
    write_text(dir / ("patterns_" + to_string(f) + ".csv"), csv);
  }

  std::string chords = "bar,beat,abs_beats,duration,label,pitches\n";
  for (const auto& c : r.chords) {
    std::string pitches;
    for (int p : c.pitches) pitches += (pitches.empty() ? "" : " ") + std::to_string(p);
    chords += fmt::format("{},{},{},{},{},{}\n", c.onset.bar, to_string(c.onset.beat), to_string(c.onset.abs_beats),
                          to_string(c.duration), csv_field(c.label), pitches);
  }
  write_text(dir / "chords.csv", chords);

  std::string prog = "key,count,length\n";
  for (const auto& p : r.progressions) prog += fmt::format("{},{},{}\n", csv_field(p.key), p.count, p.labels.size());
  write_text(dir / "progressions.csv", prog);

  std::string diss = "interval_class,count\n";
  for (const auto& d : r.dissonances) diss += fmt::format("{},{}\n", d.interval_class, d.count);
  write_text(dir / "dissonances.csv", diss);

  std::string key = "tonic,mode,correlation,label\n";
  if (r.key)
    key += fmt::format("{},{},{:.6f},{}\n", pitch_class_name(r.key->tonic_pc), to_string(r.key->mode),
                       r.key->correlation, r.key->label());
  write_text(dir / "key.csv", key);
}

double score_tempo(const Score& score, const PipelineConfig& config) {
  return config.tempo_bpm.value_or(score.initial_tempo_bpm());
}

RecordingAnalysis analyze_recording(const AudioClip& clip, const std::string& id, const Score& score,
                                    const ExtractResult& features, const PipelineConfig& config) {
  RecordingAnalysis out;
  out.id = id;
  out.duration_s = clip.duration_s();
  const double tempo = score_tempo(score, config);
  Chromagram audio = chroma_from_audio(clip, config.chroma);
  Chromagram symbolic = chroma_from_score(score, tempo, audio.hop_s);
  out.alignment = align(audio, symbolic, tempo, id);
  out.segments = segment_structure(audio, out.duration_s, config.segmenter);
  if (features.key) out.emotion = classify_emotion(clip, features.key, tempo, features.dissonance_rate);
  return out;
}

std::vector<RecordingAnalysis> analyze_recordings(const Score& score, const ExtractResult& features,
                                                  const PipelineConfig& config) {
  std::map<std::string, std::string> ids;
  for (const auto& path : config.recording_paths) {
    std::string id = recording_id(path);
    if (!ids.emplace(id, path).second) throw InputError("two recordings map to the same id '" + id + "'");
  }
  std::vector<std::future<RecordingAnalysis>> jobs;
  for (const auto& path : config.recording_paths)
    jobs.push_back(std::async(std::launch::async, [&, path] {
      return analyze_recording(load_wav(path), recording_id(path), score, features, config);
    }));
  std::vector<RecordingAnalysis> out;
  std::exception_ptr first_error;
  for (auto& job : jobs) {
    try {
      out.push_back(job.get());
    } catch (...) {
      if (!first_error) first_error = std::current_exception();
    }
  }
  if (first_error) std::rethrow_exception(first_error);
  return out;
}

void write_recording_files(const RecordingAnalysis& r, const fs::path& dir) {
  if (r.alignment) write_text(dir / ("alignment_" + r.id + ".csv"), anchors_csv(*r.alignment));
  write_text(dir / ("segments_" + r.id + ".csv"), segments_csv(r.segments));
  if (r.emotion)
    write_text(dir / ("emotion_" + r.id + ".csv"),
               fmt::format("quadrant,valence,arousal,method\n{},{:.6f},{:.6f},{}\n", to_string(r.emotion->quadrant),
                           r.emotion->valence, r.emotion->arousal, r.emotion->method));
}

void complete_metadata(WorkMetadata& meta, const std::vector<RecordingAnalysis>& recordings,
                       const ExtractResult& features) {
  for (const auto& r : recordings) {
    bool listed = std::any_of(meta.recordings.begin(), meta.recordings.end(),
                              [&](const RecordingMeta& m) { return m.id == r.id; });
    if (!listed) meta.recordings.push_back({r.id, SignalKind::Digital});
  }
  if (!meta.key_label && features.key) meta.key_label = features.key->label();
}

CqArgs default_cq_args(const WorkMetadata& meta, const ExtractResult& features,
                       const std::vector<RecordingAnalysis>& recordings) {
  CqArgs args{{"work", meta.work_iri()}, {"bar", "1"}};
  if (!features.patterns.empty()) {
    args["pattern"] = features.patterns.front().key;
    args["kind"] = to_string(features.patterns.front().kind.family);
  }
  std::map<Quadrant, int> votes;
  for (const auto& r : recordings)
    if (r.emotion) ++votes[r.emotion->quadrant];
  Quadrant best = Quadrant::Q1;
  int best_n = 0;
  for (const auto& [q, n] : votes)
    if (n > best_n) {
      best = q;
      best_n = n;
    }
  args["quadrant"] = to_string(best);
  return args;
}

PipelineOutput run_pipeline(const PipelineConfig& config) {
  config.validate();
  if (config.score_path.empty()) throw InputError("no score given");
  const fs::path dir = config.output_dir;
  Score score = load_score(config.score_path);

  PipelineOutput out;
  out.features = extract_features(score, config);
  write_extract_files(out.features, config, dir);

  out.recordings = analyze_recordings(score, out.features, config);
  for (const auto& r : out.recordings) write_recording_files(r, dir);

  out.metadata = load_metadata(config.metadata_path, score);
  complete_metadata(out.metadata, out.recordings, out.features);
  FeatureSet fs{out.features.patterns, out.features.chords, out.features.progressions};
  out.graph = build_graph(out.metadata, score, fs, out.recordings);
  write_text(dir / "graph.ttl", rdf::serialize_turtle(out.graph));
  out.report = answer_report(out.graph, default_cq_args(out.metadata, out.features, out.recordings));
  write_text(dir / "answers.txt", out.report);
  return out;
}

}  // namespace hamse
