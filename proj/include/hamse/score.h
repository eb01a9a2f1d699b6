#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hamse/rational.h"

namespace hamse {

enum class NoteKind { C, D, E, F, G, A, B, Rest };

enum class Accidental { None, Sharp, Flat, DoubleSharp, DoubleFlat };

/// Semitone offset of a natural note from C. Throws DomainError for Rest.
int natural_semitone(NoteKind kind);

int accidental_offset(Accidental acc);

/// 12 * (octave + 1) + natural_semitone + accidental_offset.
int midi_pitch_of(NoteKind kind, Accidental acc, int octave);

char note_letter(NoteKind kind);

struct Pitch {
  NoteKind letter = NoteKind::C;  // never Rest
  Accidental accidental = Accidental::None;
  int octave = 4;

  int midi() const { return midi_pitch_of(letter, accidental, octave); }
  bool operator==(const Pitch&) const = default;
};

/// Conventional spelling for a MIDI key number (C C# D Eb E F F# G G# A Bb B).
Pitch spell_midi_pitch(int midi);

/// "C4", "F#3", "Bb-1".
std::string to_string(const Pitch& p);

/// Inverse of to_string(Pitch). Returns nullopt when malformed or out of MIDI range.
std::optional<Pitch> parse_pitch(std::string_view text);

struct Metre {
  int numerator = 4;
  int denominator = 4;

  /// Bar length in quarter-note beats.
  Rational bar_length() const { return Rational(numerator * 4, denominator); }
  bool operator==(const Metre&) const = default;
};

enum class ClefKind { Treble, Bass, Alto, Tenor, Other };

struct Clef {
  ClefKind kind = ClefKind::Treble;
  std::string other;  // only meaningful when kind == Other

  static Clef from_name(std::string_view name);
  std::string name() const;
  bool operator==(const Clef&) const = default;
};

struct Section {
  int start_bar = 1;
  Metre metre;
  Clef clef;
  bool operator==(const Section&) const = default;
};

struct Position {
  int bar = 1;
  Rational beat;       // offset within the bar
  Rational abs_beats;  // offset from score start
  bool operator==(const Position&) const = default;
};

struct Dynamic {
  std::optional<std::string> literal;
  std::optional<int> midi_velocity;
  bool operator==(const Dynamic&) const = default;
};

struct SymbolicEvent {
  std::optional<Pitch> pitch;  // empty for rests
  Position position;
  Rational duration;
  std::optional<Dynamic> dynamic;

  static SymbolicEvent note(Pitch p, Position pos, Rational dur, std::optional<Dynamic> dyn = {});
  static SymbolicEvent rest(Position pos, Rational dur);

  bool is_rest() const { return !pitch.has_value(); }
  NoteKind kind() const { return pitch ? pitch->letter : NoteKind::Rest; }
  std::optional<int> midi_pitch() const {
    return pitch ? std::optional<int>(pitch->midi()) : std::nullopt;
  }
  Rational end_beats() const { return position.abs_beats + duration; }
  /// Velocity used for rendering: explicit velocity, else mapped from the
  /// literal dynamic, else 64.
  int effective_velocity() const;

  bool operator==(const SymbolicEvent&) const = default;
};

struct Voice {
  int index = 1;
  std::vector<SymbolicEvent> events;
  bool operator==(const Voice&) const = default;
};

struct Part {
  std::string name;
  int midi_program = 0;
  int staff = 1;
  std::vector<Voice> voices;
  std::vector<Section> sections;
  bool operator==(const Part&) const = default;
};

struct TempoMark {
  Rational abs_beats;
  double bpm = 120.0;
  bool operator==(const TempoMark&) const = default;
};

struct Score {
  std::string work_ref = "work";
  std::vector<Part> parts;
  int ticks_per_quarter = 480;
  std::optional<std::string> title;
  std::vector<TempoMark> tempos;

  /// First tempo mark at beat 0, else 120 bpm.
  double initial_tempo_bpm() const;
  /// Latest event offset over all parts.
  Rational end_beats() const;
  std::size_t event_count() const;
  std::size_t note_count() const;
  bool operator==(const Score&) const = default;
};

/// Throws InputError describing the first invariant violation.
void validate(const Score& score);

/// Offset of (bar, beat) from the start of the first section. Bars before the
/// first section and beats outside the bar raise RangeError.
Rational abs_beats_of(int bar, const Rational& beat, const std::vector<Section>& sections);

/// Inverse of abs_beats_of.
Position locate(const Rational& abs_beats, const std::vector<Section>& sections);

/// The section governing `bar`, or nullptr when the bar precedes every section.
const Section* section_for_bar(int bar, const std::vector<Section>& sections);

struct FlatEvent {
  std::string part;
  int voice = 1;
  SymbolicEvent event;
};

/// All events sorted by abs_beats, ties broken by part order then voice index.
std::vector<FlatEvent> flatten_events(const Score& score);

}  // namespace hamse
