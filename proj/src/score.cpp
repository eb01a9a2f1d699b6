#include "hamse/score.h"

#include <algorithm>
#include <array>
#include <set>

#include "hamse/error.h"

namespace hamse {

int natural_semitone(NoteKind kind) {
  switch (kind) {
    case NoteKind::C: return 0;
    case NoteKind::D: return 2;
    case NoteKind::E: return 4;
    case NoteKind::F: return 5;
    case NoteKind::G: return 7;
    case NoteKind::A: return 9;
    case NoteKind::B: return 11;
    case NoteKind::Rest: break;
  }
  throw DomainError("a rest has no pitch");
}

int accidental_offset(Accidental acc) {
  switch (acc) {
    case Accidental::None: return 0;
    case Accidental::Sharp: return 1;
    case Accidental::Flat: return -1;
    case Accidental::DoubleSharp: return 2;
    case Accidental::DoubleFlat: return -2;
  }
  return 0;
}

int midi_pitch_of(NoteKind kind, Accidental acc, int octave) {
  return 12 * (octave + 1) + natural_semitone(kind) + accidental_offset(acc);
}

char note_letter(NoteKind kind) {
  static constexpr std::array<char, 8> letters = {'C', 'D', 'E', 'F', 'G', 'A', 'B', 'R'};
  return letters[static_cast<int>(kind)];
}

Pitch spell_midi_pitch(int midi) {
  struct Spelling {
    NoteKind letter;
    Accidental acc;
  };
  static constexpr std::array<Spelling, 12> table = {{
      {NoteKind::C, Accidental::None},  {NoteKind::C, Accidental::Sharp},
      {NoteKind::D, Accidental::None},  {NoteKind::E, Accidental::Flat},
      {NoteKind::E, Accidental::None},  {NoteKind::F, Accidental::None},
      {NoteKind::F, Accidental::Sharp}, {NoteKind::G, Accidental::None},
      {NoteKind::G, Accidental::Sharp}, {NoteKind::A, Accidental::None},
      {NoteKind::B, Accidental::Flat},  {NoteKind::B, Accidental::None},
  }};
  if (midi < 0 || midi > 127) throw RangeError("MIDI pitch out of range: " + std::to_string(midi));
  const auto& s = table[midi % 12];
  return Pitch{s.letter, s.acc, midi / 12 - 1};
}

std::string to_string(const Pitch& p) {
  std::string out(1, note_letter(p.letter));
  switch (p.accidental) {
    case Accidental::None: break;
    case Accidental::Sharp: out += '#'; break;
    case Accidental::Flat: out += 'b'; break;
    case Accidental::DoubleSharp: out += "##"; break;
    case Accidental::DoubleFlat: out += "bb"; break;
  }
  return out + std::to_string(p.octave);
}

std::optional<Pitch> parse_pitch(std::string_view text) {
  if (text.empty()) return std::nullopt;
  Pitch p;
  switch (text.front()) {
    case 'C': p.letter = NoteKind::C; break;
    case 'D': p.letter = NoteKind::D; break;
    case 'E': p.letter = NoteKind::E; break;
    case 'F': p.letter = NoteKind::F; break;
    case 'G': p.letter = NoteKind::G; break;
    case 'A': p.letter = NoteKind::A; break;
    case 'B': p.letter = NoteKind::B; break;
    default: return std::nullopt;
  }
  text.remove_prefix(1);
  if (text.starts_with("##")) {
    p.accidental = Accidental::DoubleSharp;
    text.remove_prefix(2);
  } else if (text.starts_with("bb")) {
    p.accidental = Accidental::DoubleFlat;
    text.remove_prefix(2);
  } else if (text.starts_with("#")) {
    p.accidental = Accidental::Sharp;
    text.remove_prefix(1);
  } else if (text.starts_with("b")) {
    p.accidental = Accidental::Flat;
    text.remove_prefix(1);
  }
  if (text == "-1") {
    p.octave = -1;
  } else if (text.size() == 1 && text[0] >= '0' && text[0] <= '9') {
    p.octave = text[0] - '0';
  } else {
    return std::nullopt;
  }
  int midi = p.midi();
  if (midi < 0 || midi > 127) return std::nullopt;
  return p;
}

Clef Clef::from_name(std::string_view name) {
  if (name == "treble") return {ClefKind::Treble, {}};
  if (name == "bass") return {ClefKind::Bass, {}};
  if (name == "alto") return {ClefKind::Alto, {}};
  if (name == "tenor") return {ClefKind::Tenor, {}};
  return {ClefKind::Other, std::string(name)};
}

std::string Clef::name() const {
  switch (kind) {
    case ClefKind::Treble: return "treble";
    case ClefKind::Bass: return "bass";
    case ClefKind::Alto: return "alto";
    case ClefKind::Tenor: return "tenor";
    case ClefKind::Other: return other;
  }
  return other;
}

SymbolicEvent SymbolicEvent::note(Pitch p, Position pos, Rational dur, std::optional<Dynamic> dyn) {
  return SymbolicEvent{p, std::move(pos), dur, std::move(dyn)};
}

SymbolicEvent SymbolicEvent::rest(Position pos, Rational dur) {
  return SymbolicEvent{std::nullopt, std::move(pos), dur, std::nullopt};
}

int SymbolicEvent::effective_velocity() const {
  if (!dynamic) return 64;
  if (dynamic->midi_velocity) return *dynamic->midi_velocity;
  if (dynamic->literal) {
    static const std::array<std::pair<std::string_view, int>, 8> table = {{
        {"ppp", 16}, {"pp", 33}, {"p", 49}, {"mp", 64},
        {"mf", 80}, {"f", 96}, {"ff", 112}, {"fff", 127},
    }};
    for (const auto& [lit, vel] : table)
      if (*dynamic->literal == lit) return vel;
  }
  return 64;
}

double Score::initial_tempo_bpm() const {
  for (const auto& t : tempos)
    if (t.abs_beats == Rational(0)) return t.bpm;
  return 120.0;
}

Rational Score::end_beats() const {
  Rational end(0);
  for (const auto& part : parts)
    for (const auto& voice : part.voices)
      for (const auto& e : voice.events) end = std::max(end, e.end_beats());
  return end;
}

std::size_t Score::event_count() const {
  std::size_t n = 0;
  for (const auto& part : parts)
    for (const auto& voice : part.voices) n += voice.events.size();
  return n;
}

std::size_t Score::note_count() const {
  std::size_t n = 0;
  for (const auto& part : parts)
    for (const auto& voice : part.voices)
      n += std::count_if(voice.events.begin(), voice.events.end(),
                         [](const SymbolicEvent& e) { return !e.is_rest(); });
  return n;
}

const Section* section_for_bar(int bar, const std::vector<Section>& sections) {
  const Section* found = nullptr;
  for (const auto& s : sections) {
    if (s.start_bar > bar) break;
    found = &s;
  }
  return found;
}

Rational abs_beats_of(int bar, const Rational& beat, const std::vector<Section>& sections) {
  if (sections.empty()) throw RangeError("no sections defined");
  if (bar < sections.front().start_bar)
    throw RangeError("bar " + std::to_string(bar) + " precedes the first section");
  Rational total(0);
  for (std::size_t k = 0; k < sections.size(); ++k) {
    const Section& s = sections[k];
    int next_start = k + 1 < sections.size() ? sections[k + 1].start_bar : bar + 1;
    int last_full = std::min(bar, next_start) - 1;  // bars of this section before `bar`
    if (last_full >= s.start_bar) total += s.metre.bar_length() * (last_full - s.start_bar + 1);
    if (next_start > bar) {
      if (beat < 0 || beat >= s.metre.bar_length())
        throw RangeError("beat " + to_string(beat) + " outside bar " + std::to_string(bar));
      return total + beat;
    }
  }
  return total + beat;  // unreachable: the last section always covers `bar`
}

Position locate(const Rational& abs_beats, const std::vector<Section>& sections) {
  if (sections.empty()) throw RangeError("no sections defined");
  if (abs_beats < 0) throw RangeError("negative beat offset");
  Rational acc(0);
  for (std::size_t k = 0; k < sections.size(); ++k) {
    const Section& s = sections[k];
    Rational len = s.metre.bar_length();
    bool last = k + 1 == sections.size();
    Rational span = last ? Rational(0) : len * (sections[k + 1].start_bar - s.start_bar);
    if (last || abs_beats < acc + span) {
      Rational into = abs_beats - acc;
      Rational bars = into / len;
      std::int64_t whole = bars.numerator() / bars.denominator();
      return Position{s.start_bar + static_cast<int>(whole), into - len * whole, abs_beats};
    }
    acc += span;
  }
  return {};
}

namespace {

bool valid_denominator(int d) {
  return d == 1 || d == 2 || d == 4 || d == 8 || d == 16 || d == 32;
}

void fail(const std::string& where, const std::string& what) {
  throw InputError(where + ": " + what);
}

void validate_event(const SymbolicEvent& e, const Part& part, const std::string& where) {
  if (e.duration <= 0) fail(where, "non-positive duration");
  if (e.pitch) {
    if (e.pitch->letter == NoteKind::Rest) fail(where, "pitch letter cannot be a rest");
    if (e.pitch->octave < -1 || e.pitch->octave > 9) fail(where, "octave out of range");
    int midi = e.pitch->midi();
    if (midi < 0 || midi > 127) fail(where, "MIDI pitch out of range");
  }
  if (e.dynamic) {
    if (!e.dynamic->literal && !e.dynamic->midi_velocity) fail(where, "empty dynamic");
    if (e.dynamic->midi_velocity && (*e.dynamic->midi_velocity < 0 || *e.dynamic->midi_velocity > 127))
      fail(where, "velocity out of range");
  }
  const Position& p = e.position;
  Rational expected = abs_beats_of(p.bar, p.beat, part.sections);
  if (expected != p.abs_beats) fail(where, "position inconsistent with metre");
}

}  // namespace

void validate(const Score& score) {
  if (score.parts.empty()) throw InputError("score has no parts");
  if (score.ticks_per_quarter <= 0) throw InputError("ticks_per_quarter must be positive");
  std::set<std::string> names;
  for (const auto& part : score.parts) {
    std::string where = "part '" + part.name + "'";
    if (!names.insert(part.name).second) fail(where, "duplicate part name");
    if (part.midi_program < 0 || part.midi_program > 127) fail(where, "MIDI program out of range");
    if (part.staff < 1) fail(where, "staff must be positive");
    if (part.voices.empty()) fail(where, "no voices");
    if (part.sections.empty()) fail(where, "no sections");
    for (std::size_t k = 0; k < part.sections.size(); ++k) {
      const Section& s = part.sections[k];
      if (s.start_bar < 1) fail(where, "section start bar must be positive");
      if (k > 0 && s.start_bar <= part.sections[k - 1].start_bar) fail(where, "sections out of order");
      if (s.metre.numerator < 1 || !valid_denominator(s.metre.denominator)) fail(where, "invalid metre");
    }
    std::set<int> voice_ids;
    for (const auto& voice : part.voices) {
      std::string vwhere = where + " voice " + std::to_string(voice.index);
      if (voice.index < 1 || !voice_ids.insert(voice.index).second) fail(vwhere, "bad voice index");
      for (std::size_t i = 0; i < voice.events.size(); ++i) {
        validate_event(voice.events[i], part, vwhere);
        if (i > 0 && voice.events[i].position.abs_beats < voice.events[i - 1].end_beats())
          fail(vwhere, "overlapping or unsorted events");
      }
    }
  }
}

std::vector<FlatEvent> flatten_events(const Score& score) {
  struct Keyed {
    std::size_t part_order;
    FlatEvent fe;
  };
  std::vector<Keyed> all;
  all.reserve(score.event_count());
  for (std::size_t p = 0; p < score.parts.size(); ++p) {
    const Part& part = score.parts[p];
    for (const auto& voice : part.voices)
      for (const auto& e : voice.events) all.push_back({p, {part.name, voice.index, e}});
  }
  std::stable_sort(all.begin(), all.end(), [](const Keyed& a, const Keyed& b) {
    if (a.fe.event.position.abs_beats != b.fe.event.position.abs_beats)
      return a.fe.event.position.abs_beats < b.fe.event.position.abs_beats;
    if (a.part_order != b.part_order) return a.part_order < b.part_order;
    return a.fe.voice < b.fe.voice;
  });
  std::vector<FlatEvent> out;
  out.reserve(all.size());
  for (auto& k : all) out.push_back(std::move(k.fe));
  return out;
}

}  // namespace hamse
