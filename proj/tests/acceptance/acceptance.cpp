// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.
#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <string>

#include <fmt/core.h>

#include "hamse/competency.h"
#include "hamse/emotion.h"
#include "hamse/hts.h"
#include "hamse/knowledge.h"
#include "hamse/midi.h"
#include "hamse/pipeline.h"
#include "hamse/segmentation.h"
#include "hamse/turtle.h"
#include "hamse/vocabulary.h"
#include "test_support.h"

namespace hamse {
namespace {

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

struct Failure {
  std::string what;
};

void require(bool ok, const std::string& what) {
  if (!ok) throw Failure{what};
}

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

Score chorale() { return load_score(test::fixture_path("chorale.hts")); }

std::string ac1() {
  const auto t0 = Clock::now();
  const fs::path dir = test::scratch_dir("acceptance_cq");
  Score s = chorale();
  const double bpm = s.tempos.front().bpm;
  auto wav = write_wav_pcm16(test::render_sines(s, bpm));
  std::ofstream(dir / "take1.wav", std::ios::binary)
      .write(reinterpret_cast<const char*>(wav.data()), static_cast<std::streamsize>(wav.size()));

  PipelineConfig c;
  c.score_path = test::fixture_path("chorale.hts").string();
  c.metadata_path = test::fixture_path("chorale.json").string();
  c.recording_paths = {(dir / "take1.wav").string()};
  c.output_dir = (dir / "out").string();
  PipelineOutput out = run_pipeline(c);
  CqArgs args = default_cq_args(out.metadata, out.features, out.recordings);

  std::vector<CqResult> r(kCompetencyQuestionCount + 1);
  for (int i = 1; i <= kCompetencyQuestionCount; ++i) {
    r[i] = answer_cq(out.graph, static_cast<CompetencyQuestion>(i), args);
    require(!r[i].empty(), fmt::format("CQ{} empty", i));
  }
  const auto& rec = out.recordings.at(0);
  const double beat_s = 60.0 / bpm;
  const double hop_s = static_cast<double>(c.chroma.hop) / 22050.0;

  require(r[1].rows[0][0] == "F major", "CQ1 " + r[1].rows[0][0]);
  require(r[2].rows[0][0] == "Johann Sebastian Bach", "CQ2 " + r[2].rows[0][0]);
  require(r[3].rows[0][0] == "6", "CQ3 " + r[3].rows[0][0]);
  require(std::abs(std::stod(r[4].rows[0][1]) - 48 * beat_s) < 0.05, "CQ4 " + r[4].rows[0][1]);
  require(r[5].rows[0][0] == "12", "CQ5 " + r[5].rows[0][0]);
  require(r[6].rows[0][0] == to_string(rec.emotion->quadrant), "CQ6 " + r[6].rows[0][0]);
  require(std::abs(std::stod(r[7].rows[0][1])) <= 2 * hop_s &&
              std::abs(std::stod(r[7].rows[0][2]) - 4 * beat_s) <= 2 * hop_s,
          "CQ7 " + r[7].rows[0][1] + ".." + r[7].rows[0][2]);
  require(r[8].rows[0][0] == "1" && r[8].rows[0][1] == "1" && r[8].rows[0][3] == "1.000000", "CQ8");
  require(r[9].rows[0][0] == args.at("quadrant"), "CQ9 " + r[9].rows[0][0]);
  bool listed = false;
  for (const auto& row : r[10].rows) listed = listed || row[0] == args.at("pattern");
  require(listed, "CQ10 misses the top pattern");
  require(r[11].rows[0][0] == form_string(rec.segments), "CQ11 " + r[11].rows[0][0]);
  require(r[12].rows[0][0] == "Johann Sebastian Bach" && r[12].rows[0][1] == "1", "CQ12");

  const double t = seconds_since(t0);
  require(t < 10.0, fmt::format("took {:.2f} s", t));
  return fmt::format("12/12 CQs answered, key F major, form {}, {:.2f} s", r[11].rows[0][0], t);
}

std::string ac2() {
  const auto t0 = Clock::now();
  test::Rng rng(2002);
  for (int k = 0; k < 100; ++k) {
    auto a = test::random_chromagram(rng, 1 + rng() % 10);
    auto b = test::random_chromagram(rng, 1 + rng() % 10);
    CostMatrix cost = chroma_cost_matrix(a, b);
    WarpPath p = dtw(cost);
    require(p.total_cost == test::brute_force_path_cost(cost), fmt::format("pair {} cost differs", k));
    require(is_valid_warp_path(p.points, a.size(), b.size()), fmt::format("pair {} path invalid", k));
  }
  const double t = seconds_since(t0);
  require(t < 5.0, fmt::format("took {:.2f} s", t));
  return fmt::format("100 pairs exact, {:.2f} s", t);
}

std::string ac3() {
  const auto t0 = Clock::now();
  test::Rng rng(3003);
  const PatternFamily families[] = {PatternFamily::Interval, PatternFamily::Rhythmic, PatternFamily::Melodic};
  int compared = 0;
  for (int k = 0; k < 100; ++k) {
    Score s = test::random_score(rng);
    require(s.event_count() <= 64, "generator exceeded 64 events");
    for (int f = 0; f < 3; ++f)
      for (bool rests : {false, true}) {
        PatternKind kind{families[f], rests};
        MiningOptions opt{2, 2 + k % 5, 2};
        require(test::as_table(mine_patterns(s, kind, opt)) == test::naive_patterns(s, kind, opt),
                fmt::format("score {} family {} rests {}", k, f, rests));
        ++compared;
      }
  }
  const double t = seconds_since(t0);
  require(t < 10.0, fmt::format("took {:.2f} s", t));
  return fmt::format("{} comparisons over 100 scores, {:.2f} s", compared, t);
}

std::string ac4() {
  Score s = chorale();
  s.tempos = {{Rational(0), 60.0}};
  const double hop = 0.1;
  auto symbolic = chroma_from_score(s, 60.0, hop);
  auto self = align(symbolic, symbolic, 60.0);
  require(self.total_cost == 0.0, fmt::format("self cost {}", self.total_cost));
  for (std::size_t i = 0; i < self.path.size(); ++i)
    require(self.path[i] == PathPoint{i, i}, "self path leaves the diagonal");

  auto stretched = align(chroma_from_score(s, 30.0, hop), symbolic, 60.0);
  double worst = 0.0;
  for (int bar = 1; bar <= 12; ++bar) {
    auto t = map_beats_to_seconds(stretched, s, {bar, Rational(0), bar + 1, Rational(0)});
    worst = std::max({worst, std::abs(t.start_s - 8.0 * (bar - 1)), std::abs(t.end_s - 8.0 * bar)});
  }
  require(worst <= 2 * hop, fmt::format("bar error {:.3f} s", worst));
  return fmt::format("{} frames diagonal, stretched bar error {:.3f} s", symbolic.size(), worst);
}

std::string ac5() {
  test::Rng rng(5005);
  double worst = 0.0;
  for (int k = 0; k < 50; ++k) {
    int tonic = static_cast<int>(rng() % 12);
    Mode mode = rng() % 2 ? Mode::Major : Mode::Minor;
    Score s = test::random_diatonic_score(rng, tonic, mode, 24);
    auto base = estimate_key(s);
    for (int t = 1; t < 12; ++t) {
      auto moved = estimate_key(test::transpose(s, t));
      require(moved.tonic_pc == (base.tonic_pc + t) % 12 && moved.mode == base.mode,
              fmt::format("score {} shift {}", k, t));
      worst = std::max(worst, std::abs(moved.correlation - base.correlation));
    }
  }
  require(worst <= 1e-9, fmt::format("correlation drift {:g}", worst));
  return fmt::format("50 scores x 11 shifts, max drift {:g}", worst);
}

std::string ac6() {
  std::size_t frames = 0;
  for (auto [hz, pc] : {std::pair{440.0, 9}, std::pair{261.63, 0}}) {
    auto c = chroma_from_audio(test::sine(hz, 1.0));
    require(c.size() > 2, "too few frames");
    for (std::size_t f = 1; f + 1 < c.size(); ++f) {
      const auto& col = c.frames[f];
      int arg = static_cast<int>(std::max_element(col.begin(), col.end()) - col.begin());
      require(arg == pc, fmt::format("{} Hz frame {} argmax {}", hz, f, arg));
      ++frames;
    }
  }
  return fmt::format("{} interior frames", frames);
}

std::string ac7() {
  const double hop = 0.25;
  auto two = segment_structure(test::block_chromagram({{0, 20}, {7, 20}}, hop), 40 * hop);
  require(two.size() == 2, fmt::format("{} segments", two.size()));
  const double frame = two[0].end_s / hop;
  require(std::abs(frame - 20.0) <= 1.0, fmt::format("boundary at frame {}", frame));
  auto aba = segment_structure(test::block_chromagram({{0, 20}, {7, 20}, {0, 20}}, hop), 60 * hop);
  require(form_string(aba) == "A B A", "form " + form_string(aba));
  return fmt::format("boundary at frame {:g}, form {}", frame, form_string(aba));
}

rdf::TripleGraph emitted(const Score& s, const std::string& id) {
  WorkMetadata m;
  m.base_iri = "http://example.org/acceptance";
  m.work_id = id;
  m.composer_name = "Johann Sebastian Bach";
  FeatureSet f;
  for (auto fam : {PatternFamily::Interval, PatternFamily::Rhythmic, PatternFamily::Melodic}) {
    auto p = mine_patterns(s, {fam, false});
    f.patterns.insert(f.patterns.end(), p.begin(), p.end());
  }
  f.chords = chordify(s);
  f.progressions = mine_progressions(f.chords);
  std::vector<RecordingAnalysis> recs;
  if (s.note_count() > 0) {
    m.recordings.push_back({"take", SignalKind::Digital});
    auto c = chroma_from_score(s, 60.0, 0.1);
    RecordingAnalysis r;
    r.id = "take";
    r.duration_s = c.size() * 0.1;
    r.alignment = align(c, c, 60.0, "take");
    r.segments = {{0.0, r.duration_s, "A"}};
    r.emotion = EmotionTag{Quadrant::Q4, 0.25, -0.25, "heuristic-v1"};
    recs.push_back(r);
  }
  return build_graph(m, s, f, recs);
}

std::string ac8() {
  test::Rng rng(8008);
  std::vector<Score> scores{chorale()};
  for (int k = 0; k < 20; ++k) scores.push_back(test::random_score(rng));
  std::size_t triples = 0;
  for (std::size_t k = 0; k < scores.size(); ++k) {
    auto g = emitted(scores[k], "w" + std::to_string(k));
    auto bad = vocab::closed_vocabulary_violations(g);
    require(bad.empty(), fmt::format("graph {} uses {}", k, bad.empty() ? "" : bad.front()));
    const std::string ttl = rdf::serialize_turtle(g);
    require(rdf::parse_turtle(ttl) == g, fmt::format("graph {} round trip", k));
    require(rdf::serialize_turtle(emitted(scores[k], "w" + std::to_string(k))) == ttl,
            fmt::format("graph {} not byte-identical", k));
    triples += g.size();
  }

  auto pick = [&](std::size_t n) { return static_cast<std::size_t>(rng() % n); };
  for (int round = 0; round < 60; ++round) {
    rdf::TripleGraph g;
    const std::size_t size = 1 + pick(200);
    while (g.size() < size) {
      auto s = rdf::iri("urn:s" + std::to_string(pick(10)));
      auto p = rdf::iri("urn:p" + std::to_string(pick(4)));
      auto o = pick(3) == 0 ? rdf::integer_literal(static_cast<long long>(pick(5)))
                            : rdf::iri("urn:s" + std::to_string(pick(10)));
      g.add(s, p, o);
    }
    std::vector<rdf::Triple> all(g.triples().begin(), g.triples().end());
    std::vector<rdf::TriplePattern> ps;
    const char* names[] = {"a", "b", "c", "d"};
    for (std::size_t i = 0, k = 1 + pick(2); i < k; ++i) {
      const auto& seed = all[pick(all.size())];
      auto slot = [&](const rdf::Term& t) -> rdf::PatternTerm {
        if (pick(3) == 0) return t;
        return rdf::var(names[pick(4)]);
      };
      ps.push_back({slot(seed.subject), slot(seed.predicate), slot(seed.object)});
    }
    require(rdf::match(g, ps, {false}) == test::brute_force_match(g, ps), fmt::format("match round {}", round));
  }
  return fmt::format("{} graphs ({} triples) clean, 60 match checks", scores.size(), triples);
}

std::string ac9() {
  test::Rng rng(9009);
  for (int k = 0; k < 100; ++k) {
    Score s = test::random_score(rng);
    require(parse_hts(write_hts(s)) == s, fmt::format("score {} round trip", k));
  }
  const std::vector<std::uint8_t> smf{'M', 'T', 'h', 'd', 0, 0, 0, 6, 0, 0, 0, 1, 0x01, 0xE0,
                                      'M', 'T', 'r', 'k', 0, 0, 0, 13,
                                      0x00, 0x90, 0x3C, 0x40, 0x83, 0x60, 0x80, 0x3C, 0x40, 0x00, 0xFF, 0x2F, 0x00};
  Score m = parse_smf(smf);
  require(m.parts.size() == 1 && m.event_count() == 1, "SMF shape");
  const auto& e = m.parts[0].voices.at(0).events.at(0);
  require(e.midi_pitch() == 60 && e.duration == Rational(1) && e.position.abs_beats == Rational(0),
          "SMF event");
  return "100 HTS round trips, SMF C4 quarter";
}

std::string ac10() {
  test::Rng rng(1010);
  std::uniform_real_distribution<double> rms(0.0, 0.5), tempo(20.0, 240.0), diss(0.0, 1.0);
  for (int k = 0; k < 1000; ++k) {
    EmotionFeatures f{rms(rng), rng() % 2 ? Mode::Major : Mode::Minor, tempo(rng), diss(rng)};
    auto t = classify_emotion(f);
    require(t.quadrant == quadrant_of(t.valence, t.arousal), fmt::format("input {} quadrant", k));
    require(std::abs(t.arousal) <= 1.0 && std::abs(t.valence) <= 1.0, fmt::format("input {} range", k));
    EmotionFeatures faster = f;
    faster.tempo_bpm += 1.0 + tempo(rng) / 10.0;
    require(classify_emotion(faster).arousal >= t.arousal, fmt::format("input {} tempo", k));
    EmotionFeatures major = f, minor = f;
    major.mode = Mode::Major;
    minor.mode = Mode::Minor;
    require(classify_emotion(major).valence > classify_emotion(minor).valence, fmt::format("input {} mode", k));
  }
  return "1000 inputs";
}

}  // namespace
}  // namespace hamse

int main() {
  const std::pair<const char*, std::function<std::string()>> criteria[] = {
      {"AC1 competency questions on the chorale", hamse::ac1},
      {"AC2 DTW equals brute force", hamse::ac2},
      {"AC3 pattern mining equals naive oracle", hamse::ac3},
      {"AC4 self-alignment and 2x stretch", hamse::ac4},
      {"AC5 key estimate transposition covariance", hamse::ac5},
      {"AC6 pure tone chroma", hamse::ac6},
      {"AC7 segmentation boundaries and ABA", hamse::ac7},
      {"AC8 RDF integrity and match oracle", hamse::ac8},
      {"AC9 HTS and SMF round trips", hamse::ac9},
      {"AC10 emotion tagger properties", hamse::ac10},
  };
  int failed = 0;
  for (const auto& [name, run] : criteria) {
    std::string detail;
    bool ok = false;
    try {
      detail = run();
      ok = true;
    } catch (const hamse::Failure& f) {
      detail = f.what;
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    if (!ok) ++failed;
    fmt::print("{} {}: {}\n", ok ? "PASS" : "FAIL", name, detail);
  }
  std::cout.flush();
  return failed == 0 ? 0 : 1;
}
