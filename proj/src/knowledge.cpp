#include "hamse/knowledge.h"

#include <cctype>
#include <cstdlib>
#include <map>
#include <set>

#include "hamse/error.h"
#include "hamse/vocabulary.h"

namespace hamse {

using rdf::Term;
using rdf::TripleGraph;
namespace v = vocab;

std::string to_string(SignalKind k) {
  switch (k) {
    case SignalKind::Digital: return "digital";
    case SignalKind::Analog: return "analog";
    case SignalKind::DigitalAndAnalog: return "digital+analog";
  }
  return "?";
}

std::optional<SignalKind> parse_signal_kind(std::string_view text) {
  if (text == "digital") return SignalKind::Digital;
  if (text == "analog") return SignalKind::Analog;
  if (text == "digital+analog" || text == "both") return SignalKind::DigitalAndAnalog;
  return std::nullopt;
}

std::string default_base_iri() {
  const char* env = std::getenv("HAMSE_BASE_IRI");
  std::string base = env && *env ? env : "http://example.org/hamse";
  while (!base.empty() && base.back() == '/') base.pop_back();
  return base;
}

std::string slug(std::string_view text) {
  std::string out;
  bool dash = false;
  for (char c : text) {
    auto u = static_cast<unsigned char>(c);
    if (std::isalnum(u)) {
      if (dash && !out.empty()) out += '-';
      dash = false;
      out += static_cast<char>(std::tolower(u));
    } else {
      dash = true;
    }
  }
  return out.empty() ? "x" : out;
}

std::string WorkMetadata::work_iri() const { return base_iri + "/" + work_id; }

std::vector<std::string> WorkMetadata::movement_iris() const {
  std::vector<std::string> out;
  for (int k = 1; k <= movement_count; ++k) out.push_back(work_iri() + "/movement/" + std::to_string(k));
  return out;
}

std::string WorkMetadata::score_movement_iri() const {
  int k = score_movement == 0 ? movement_count : score_movement;
  return work_iri() + "/movement/" + std::to_string(k);
}

std::string WorkMetadata::representation_iri(int n) const { return work_iri() + "/rep/" + std::to_string(n); }

std::string WorkMetadata::recording_iri(const std::string& id) const { return work_iri() + "/recording/" + id; }

void WorkMetadata::validate() const {
  if (work_id.empty()) throw InputError("metadata: work_id is empty");
  for (char c : work_id)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_' || c == '.'))
      throw InputError("metadata: work_id '" + work_id + "' may only use letters, digits, '-', '_' and '.'");
  if (movement_count < 1) throw InputError("metadata: movement_count must be positive");
  if (score_movement < 0 || score_movement > movement_count)
    throw InputError("metadata: score_movement " + std::to_string(score_movement) + " is not a movement");
  std::set<std::string> seen;
  for (const auto& r : recordings) {
    if (r.id.empty()) throw InputError("metadata: recording with empty id");
    if (!seen.insert(r.id).second) throw InputError("metadata: duplicate recording id '" + r.id + "'");
  }
}

Term beats_literal(const Rational& r) {
  if (auto dec = to_decimal_string(r)) return rdf::literal(*dec, rdf::kXsd + "decimal");
  return rdf::literal(to_string(r));
}

namespace {

Term agent(const WorkMetadata& meta, const std::string& name) { return rdf::iri(meta.base_iri + "/agent/" + slug(name)); }

std::string performance_iri(const WorkMetadata& meta) { return meta.work_iri() + "/performance"; }

std::vector<Term> signals_of(const WorkMetadata& meta, const RecordingMeta& r) {
  const std::string rec = meta.recording_iri(r.id);
  std::vector<Term> out;
  if (r.signal != SignalKind::Analog) out.push_back(rdf::iri(rec + "/signal/digital"));
  if (r.signal != SignalKind::Digital) out.push_back(rdf::iri(rec + "/signal/analog"));
  return out;
}

const RecordingMeta* find_recording(const WorkMetadata& meta, const std::string& id) {
  for (const auto& r : meta.recordings)
    if (r.id == id) return &r;
  return nullptr;
}

Term recording_timeline(const WorkMetadata& meta, const std::string& id) {
  return rdf::iri(meta.recording_iri(id) + "/timeline");
}

Term timeline_map(const WorkMetadata& meta, const std::string& id) { return rdf::iri(meta.recording_iri(id) + "/map"); }

// Resources shared by emit_features and emit_recording for one alignment.
void add_timeline_map(TripleGraph& g, const WorkMetadata& meta, const std::string& id, const Term& abstract_tl) {
  const Term rec = rdf::iri(meta.recording_iri(id));
  const Term tl = recording_timeline(meta, id);
  const Term map = timeline_map(meta, id);
  g.add(tl, v::type(), v::tl("DiscreteTimeLine"));
  g.add(rec, v::hamse("hasTimeLine"), tl);
  g.add(map, v::type(), v::tl("TimeLineMap"));
  g.add(map, v::tl("domainTimeLine"), abstract_tl);
  g.add(map, v::tl("rangeTimeLine"), tl);
  g.add(rec, v::hamse("hasTimeLineMap"), map);
}

void add_abstract_interval(TripleGraph& g, const Term& node, const Term& timeline, const Position& start,
                           const Rational& duration) {
  g.add(node, v::type(), v::tl("AbstractInterval"));
  g.add(node, v::tl("onTimeLine"), timeline);
  g.add(node, v::hamse("atBar"), rdf::integer_literal(start.bar));
  g.add(node, v::hamse("atBeat"), beats_literal(start.beat));
  g.add(node, v::hamse("startBeat"), beats_literal(start.abs_beats));
  g.add(node, v::hamse("durationBeats"), beats_literal(duration));
}

void add_discrete_interval(TripleGraph& g, const Term& node, const Term& timeline, double start_s, double end_s) {
  g.add(node, v::type(), v::tl("Interval"));
  g.add(node, v::tl("onTimeLine"), timeline);
  g.add(node, v::hamse("startSecond"), rdf::seconds_literal(start_s));
  g.add(node, v::hamse("endSecond"), rdf::seconds_literal(end_s));
}

// Abstract interval plus, per alignment, the matching interval in seconds.
void add_occurrence(TripleGraph& g, const WorkMetadata& meta, const Term& feature, const std::string& node_iri,
                    const Term& abstract_tl, const Position& start, const Rational& end_beats,
                    const std::vector<AlignmentLink>& alignments) {
  const Term occ = rdf::iri(node_iri);
  g.add(feature, v::hamse("hasOccurrence"), occ);
  add_abstract_interval(g, occ, abstract_tl, start, end_beats - start.abs_beats);
  for (const auto& link : alignments) {
    const Term d = rdf::iri(node_iri + "/recording/" + link.recording_id);
    add_discrete_interval(g, d, recording_timeline(meta, link.recording_id),
                          beats_to_seconds(link.map, to_double(start.abs_beats)),
                          beats_to_seconds(link.map, to_double(end_beats)));
    g.add(d, v::hamse("mappedBy"), timeline_map(meta, link.recording_id));
    g.add(occ, v::hamse("correspondsTo"), d);
  }
}

const char* pattern_class(PatternFamily f) {
  switch (f) {
    case PatternFamily::Interval: return "IntervalPattern";
    case PatternFamily::Rhythmic: return "RhythmicPattern";
    case PatternFamily::Melodic: return "MelodicPattern";
  }
  return "";
}

const char* event_class(NoteKind k) {
  switch (k) {
    case NoteKind::C: return "NoteC";
    case NoteKind::D: return "NoteD";
    case NoteKind::E: return "NoteE";
    case NoteKind::F: return "NoteF";
    case NoteKind::G: return "NoteG";
    case NoteKind::A: return "NoteA";
    case NoteKind::B: return "NoteB";
    case NoteKind::Rest: return "Rest";
  }
  return "";
}

const char* accidental_name(Accidental a) {
  switch (a) {
    case Accidental::Sharp: return "Sharp";
    case Accidental::Flat: return "Flat";
    case Accidental::DoubleSharp: return "DoubleSharp";
    case Accidental::DoubleFlat: return "DoubleFlat";
    case Accidental::None: break;
  }
  return nullptr;
}

const std::vector<Section>& reference_sections(const Score& score) {
  if (score.parts.empty()) throw InputError("score has no parts");
  return score.parts.front().sections;
}

}  // namespace

TripleGraph emit_work(const WorkMetadata& meta) {
  meta.validate();
  TripleGraph g = v::schema_preamble();
  const Term work = rdf::iri(meta.work_iri());
  g.add(work, v::type(), v::mo("MusicalWork"));
  if (!meta.title.empty()) g.add(work, v::dc("title"), rdf::literal(meta.title));

  const Term composition = rdf::iri(meta.work_iri() + "/composition");
  g.add(composition, v::type(), v::mo("Composition"));
  g.add(composition, v::mo("produced_work"), work);
  if (!meta.composer_name.empty()) {
    const Term composer = agent(meta, meta.composer_name);
    g.add(composer, v::type(), v::frbr("Agent"));
    g.add(composer, v::foaf("name"), rdf::literal(meta.composer_name));
    g.add(composition, v::mo("composer"), composer);
  }
  const Term score = rdf::iri(meta.work_iri() + "/score");
  g.add(score, v::type(), v::mo(meta.published_score ? "PublishedScore" : "Score"));
  g.add(composition, v::mo("produced_score"), score);

  int k = 1;
  for (const auto& m : meta.movement_iris()) {
    const Term mv = rdf::iri(m);
    g.add(mv, v::type(), v::mo("Movement"));
    g.add(mv, v::mo("movement_number"), rdf::integer_literal(k++));
    g.add(work, v::mo("movement"), mv);
  }
  if (meta.genre) {
    const Term genre = rdf::iri(meta.base_iri + "/genre/" + slug(*meta.genre));
    g.add(genre, v::type(), v::mo("Genre"));
    g.add(genre, v::label(), rdf::literal(*meta.genre));
    g.add(work, v::mo("genre"), genre);
  }
  if (meta.key_label) {
    const Term key = rdf::iri(meta.work_iri() + "/key");
    g.add(key, v::type(), v::mo("Key"));
    g.add(key, v::label(), rdf::literal(*meta.key_label));
    g.add(work, v::mo("key"), key);
  }
  if (meta.arrangement) {
    const Term arr = rdf::iri(meta.work_iri() + "/arrangement");
    g.add(arr, v::type(), v::mo("Arrangement"));
    g.add(arr, v::label(), rdf::literal(*meta.arrangement));
    g.add(work, v::mo("arranged_in"), arr);
  }

  if (!meta.performance && meta.recordings.empty()) return g;
  const Term perf = rdf::iri(performance_iri(meta));
  g.add(perf, v::type(), v::mo("Performance"));
  g.add(perf, v::mo("performance_of"), work);
  if (meta.performance) {
    for (const auto& name : meta.performance->instruments) {
      const Term inst = rdf::iri(meta.base_iri + "/instrument/" + slug(name));
      g.add(inst, v::type(), v::mo("Instrument"));
      g.add(inst, v::label(), rdf::literal(name));
      g.add(perf, v::mo("instrument"), inst);
    }
    for (const auto& name : meta.performance->musicians) {
      const Term a = agent(meta, name);
      g.add(a, v::type(), v::frbr("Agent"));
      g.add(a, v::foaf("name"), rdf::literal(name));
      g.add(perf, v::mo("performer"), a);
    }
  }
  for (const auto& r : meta.recordings) {
    const Term sound = rdf::iri(performance_iri(meta) + "/sound/" + r.id);
    const Term rec = rdf::iri(meta.recording_iri(r.id));
    g.add(sound, v::type(), v::mo("Sound"));
    g.add(perf, v::mo("produced_sound"), sound);
    g.add(rec, v::type(), v::mo("Recording"));
    g.add(rec, v::label(), rdf::literal(r.id));
    g.add(rec, v::mo("records"), sound);
    auto signals = signals_of(meta, r);
    for (const auto& s : signals) {
      bool digital = s.value.size() >= 7 && s.value.compare(s.value.size() - 7, 7, "digital") == 0;
      g.add(s, v::type(), v::mo(digital ? "DigitalSignal" : "AnalogSignal"));
      g.add(rec, v::mo("produced_signal"), s);
    }
    if (signals.size() == 2) g.add(signals[0], v::mo("sampled_version_of"), signals[1]);
  }
  return g;
}

TripleGraph emit_score(const Score& score, const WorkMetadata& meta, int rep) {
  validate(score);
  meta.validate();
  TripleGraph g = v::schema_preamble();
  const std::string rep_iri = meta.representation_iri(rep);
  const Term r = rdf::iri(rep_iri);
  const Term timeline = rdf::iri(rep_iri + "/timeline");
  g.add(r, v::type(), v::hamse("SymbolicRepresentation"));
  g.add(rdf::iri(meta.score_movement_iri()), v::hamse("hasSymbolicRepresentation"), r);
  g.add(timeline, v::type(), v::tl("AbstractTimeLine"));
  g.add(r, v::hamse("hasTimeLine"), timeline);

  for (std::size_t k = 0; k < score.parts.size(); ++k) {
    const Part& part = score.parts[k];
    const std::string part_iri = rep_iri + "/part/" + std::to_string(k + 1);
    const Term p = rdf::iri(part_iri);
    g.add(p, v::type(), v::hamse("Part"));
    g.add(r, v::hamse("hasPart"), p);
    g.add(p, v::label(), rdf::literal(part.name));
    g.add(p, v::hamse("hasMidiProgram"), rdf::integer_literal(part.midi_program));
    g.add(p, v::hamse("hasStaff"), rdf::integer_literal(part.staff));

    for (std::size_t s = 0; s < part.sections.size(); ++s) {
      const Section& sec = part.sections[s];
      const Term node = rdf::iri(part_iri + "/section/" + std::to_string(s + 1));
      g.add(node, v::type(), v::hamse("Section"));
      g.add(p, v::hamse("hasSection"), node);
      g.add(node, v::hamse("hasStartBar"), rdf::integer_literal(sec.start_bar));
      g.add(node, v::hamse("hasMetre"),
            rdf::literal(std::to_string(sec.metre.numerator) + "/" + std::to_string(sec.metre.denominator)));
      g.add(node, v::hamse("hasClef"), rdf::literal(sec.clef.name()));
    }

    for (const Voice& voice : part.voices) {
      const std::string voice_iri = part_iri + "/voice/" + std::to_string(voice.index);
      const Term vn = rdf::iri(voice_iri);
      g.add(vn, v::type(), v::hamse("Voice"));
      g.add(p, v::hamse("hasVoice"), vn);
      g.add(vn, v::hamse("hasVoiceNumber"), rdf::integer_literal(voice.index));

      for (std::size_t e = 0; e < voice.events.size(); ++e) {
        const SymbolicEvent& ev = voice.events[e];
        const std::string event_iri = voice_iri + "/event/" + std::to_string(e + 1);
        const Term en = rdf::iri(event_iri);
        g.add(en, v::type(), v::hamse(event_class(ev.kind())));
        g.add(vn, v::hamse("hasSymbolicEvent"), en);
        if (ev.pitch) {
          g.add(en, v::hamse("hasMidiPitch"), rdf::integer_literal(ev.pitch->midi()));
          g.add(en, v::hamse("hasOctave"), rdf::integer_literal(ev.pitch->octave));
          g.add(en, v::hamse("hasStaff"), rdf::integer_literal(part.staff));
          if (const char* acc = accidental_name(ev.pitch->accidental))
            g.add(en, v::hamse("hasAccidental"), v::hamse(acc));
        }
        if (ev.dynamic) {
          const Term dn = rdf::iri(event_iri + "/dynamic");
          g.add(dn, v::type(), v::hamse("Dynamic"));
          g.add(en, v::hamse("hasDynamic"), dn);
          if (ev.dynamic->literal) g.add(dn, v::hamse("hasLiteralDynamic"), rdf::literal(*ev.dynamic->literal));
          if (ev.dynamic->midi_velocity)
            g.add(dn, v::hamse("hasMidiVelocity"), rdf::integer_literal(*ev.dynamic->midi_velocity));
        }
        const Term in = rdf::iri(event_iri + "/interval");
        g.add(en, v::hamse("hasPosition"), in);
        add_abstract_interval(g, in, timeline, ev.position, ev.duration);
      }
    }
  }
  return g;
}

TripleGraph emit_features(const FeatureSet& features, const Score& score, const WorkMetadata& meta,
                          const std::vector<AlignmentLink>& alignments, int rep) {
  meta.validate();
  for (const auto& link : alignments)
    if (!find_recording(meta, link.recording_id))
      throw InputError("alignment for unknown recording '" + link.recording_id + "'");
  reference_sections(score);
  TripleGraph g = v::schema_preamble();
  const std::string rep_iri = meta.representation_iri(rep);
  const Term r = rdf::iri(rep_iri);
  const Term timeline = rdf::iri(rep_iri + "/timeline");
  for (const auto& link : alignments) add_timeline_map(g, meta, link.recording_id, timeline);

  std::map<std::string, int> counters;
  for (const auto& set : features.patterns) {
    std::string group = to_string(set.kind.family) + (set.kind.include_rests ? "-rests" : "");
    const std::string f_iri = rep_iri + "/feature/" + group + "-pattern/" + std::to_string(++counters[group]);
    const Term f = rdf::iri(f_iri);
    g.add(f, v::type(), v::hamse(pattern_class(set.kind.family)));
    g.add(f, v::hamse("extractedFrom"), r);
    g.add(f, v::hamse("patternKey"), rdf::literal(set.key));
    g.add(f, v::hamse("patternLength"), rdf::integer_literal(static_cast<long long>(set.length)));
    g.add(f, v::hamse("occurrenceCount"), rdf::integer_literal(static_cast<long long>(set.count)));
    g.add(f, v::hamse("includesRests"), rdf::boolean_literal(set.kind.include_rests));
    for (std::size_t j = 0; j < set.occurrences.size(); ++j) {
      const auto& o = set.occurrences[j];
      add_occurrence(g, meta, f, f_iri + "/occurrence/" + std::to_string(j + 1), timeline, o.start,
                     o.end.abs_beats, alignments);
    }
  }

  int chord_no = 0;
  for (const auto& c : features.chords) {
    if (c.is_rest()) continue;
    const std::string f_iri = rep_iri + "/feature/chord/" + std::to_string(++chord_no);
    const Term f = rdf::iri(f_iri);
    g.add(f, v::type(), v::hamse("Chord"));
    g.add(f, v::hamse("extractedFrom"), r);
    g.add(f, v::hamse("chordLabel"), rdf::literal(c.label));
    add_occurrence(g, meta, f, f_iri + "/occurrence/1", timeline, c.onset, c.end_beats(), alignments);
  }

  for (std::size_t i = 0; i < features.progressions.size(); ++i) {
    const auto& p = features.progressions[i];
    const std::string f_iri = rep_iri + "/feature/progression/" + std::to_string(i + 1);
    const Term f = rdf::iri(f_iri);
    g.add(f, v::type(), v::hamse("ChordProgression"));
    g.add(f, v::hamse("extractedFrom"), r);
    g.add(f, v::hamse("patternKey"), rdf::literal(p.key));
    g.add(f, v::hamse("patternLength"), rdf::integer_literal(static_cast<long long>(p.labels.size())));
    g.add(f, v::hamse("occurrenceCount"), rdf::integer_literal(static_cast<long long>(p.count)));
    for (std::size_t j = 0; j < p.occurrences.size(); ++j) {
      const Position& start = p.occurrences[j];
      Rational end = j < p.occurrence_ends.size() ? p.occurrence_ends[j] : start.abs_beats;
      add_occurrence(g, meta, f, f_iri + "/occurrence/" + std::to_string(j + 1), timeline, start, end,
                     alignments);
    }
  }
  return g;
}

TripleGraph emit_recording(const RecordingAnalysis& rec, const Score& score, const WorkMetadata& meta, int rep) {
  meta.validate();
  const RecordingMeta* rm = find_recording(meta, rec.id);
  if (!rm) throw InputError("recording '" + rec.id + "' is not listed in the metadata");
  TripleGraph g = v::schema_preamble();
  const Term r = rdf::iri(meta.recording_iri(rec.id));
  const Term tl = recording_timeline(meta, rec.id);
  g.add(tl, v::type(), v::tl("DiscreteTimeLine"));
  g.add(r, v::hamse("hasTimeLine"), tl);

  const Term extent = rdf::iri(meta.recording_iri(rec.id) + "/extent");
  add_discrete_interval(g, extent, tl, 0.0, rec.duration_s);
  for (const auto& s : signals_of(meta, *rm)) g.add(s, v::mo("time"), extent);

  if (rec.alignment) {
    const auto& sections = reference_sections(score);
    const Term abstract_tl = rdf::iri(meta.representation_iri(rep) + "/timeline");
    add_timeline_map(g, meta, rec.id, abstract_tl);
    const Term map = timeline_map(meta, rec.id);
    g.add(map, v::hamse("alignmentCost"), rdf::double_literal(rec.alignment->total_cost));

    const Rational end = score.end_beats();
    if (end > 0) {
      Position last = locate(end, sections);
      int last_bar = last.beat == Rational(0) ? last.bar - 1 : last.bar;
      for (int bar = sections.front().start_bar; bar <= last_bar; ++bar) {
        Rational a = abs_beats_of(bar, Rational(0), sections);
        Rational b = std::min(end, abs_beats_of(bar + 1, Rational(0), sections));
        const Term node = rdf::iri(meta.recording_iri(rec.id) + "/map/bar/" + std::to_string(bar));
        add_discrete_interval(g, node, tl, beats_to_seconds(*rec.alignment, to_double(a)),
                              beats_to_seconds(*rec.alignment, to_double(b)));
        g.add(node, v::hamse("atBar"), rdf::integer_literal(bar));
        g.add(node, v::hamse("mappedBy"), map);
      }
    }
  }

  for (std::size_t k = 0; k < rec.segments.size(); ++k) {
    const auto& seg = rec.segments[k];
    const std::string s_iri = meta.recording_iri(rec.id) + "/structure/" + std::to_string(k + 1);
    const Term s = rdf::iri(s_iri);
    g.add(s, v::type(), v::hamse("Structure"));
    g.add(s, v::hamse("extractedFrom"), r);
    g.add(s, v::hamse("structureLabel"), rdf::literal(seg.label));
    g.add(s, v::hamse("segmentIndex"), rdf::integer_literal(static_cast<long long>(k + 1)));
    const Term in = rdf::iri(s_iri + "/interval");
    g.add(s, v::hamse("hasPosition"), in);
    add_discrete_interval(g, in, tl, seg.start_s, seg.end_s);
  }

  if (rec.emotion) {
    const Term e = rdf::iri(meta.recording_iri(rec.id) + "/emotion");
    g.add(e, v::type(), v::hamse("Emotion"));
    g.add(e, v::hamse("extractedFrom"), r);
    g.add(e, v::hamse("quadrant"), rdf::literal(to_string(rec.emotion->quadrant)));
    g.add(e, v::hamse("valence"), rdf::double_literal(rec.emotion->valence));
    g.add(e, v::hamse("arousal"), rdf::double_literal(rec.emotion->arousal));
    g.add(e, v::hamse("method"), rdf::literal(rec.emotion->method));
  }
  return g;
}

TripleGraph build_graph(const WorkMetadata& meta, const Score& score, const FeatureSet& features,
                        const std::vector<RecordingAnalysis>& recordings) {
  TripleGraph g = emit_work(meta);
  g.merge(emit_score(score, meta));
  std::vector<AlignmentLink> links;
  for (const auto& r : recordings)
    if (r.alignment) links.push_back({r.id, *r.alignment});
  g.merge(emit_features(features, score, meta, links));
  for (const auto& r : recordings) g.merge(emit_recording(r, score, meta));
  return g;
}

}  // namespace hamse
