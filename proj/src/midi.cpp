#include "hamse/midi.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>

#include "hamse/error.h"

namespace hamse {
namespace {

class ByteReader {
 public:
  ByteReader(std::span<const std::uint8_t> bytes, std::size_t begin, std::size_t end)
      : bytes_(bytes), pos_(begin), end_(end) {}

  std::size_t offset() const { return pos_; }
  bool at_end() const { return pos_ >= end_; }

  std::uint8_t u8() {
    if (pos_ >= end_) throw BinaryParseError("unexpected end of data", pos_);
    return bytes_[pos_++];
  }
  std::uint32_t be(int n) {
    std::uint32_t v = 0;
    for (int i = 0; i < n; ++i) v = (v << 8) | u8();
    return v;
  }
  std::uint32_t vlq() {
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) {
      std::uint8_t b = u8();
      v = (v << 7) | (b & 0x7F);
      if (!(b & 0x80)) return v;
    }
    throw BinaryParseError("variable-length quantity longer than 4 bytes", pos_);
  }
  std::span<const std::uint8_t> take(std::size_t n) {
    if (n > end_ - pos_) throw BinaryParseError("truncated data: need " + std::to_string(n) + " bytes", pos_);
    auto s = bytes_.subspan(pos_, n);
    pos_ += n;
    return s;
  }

 private:
  std::span<const std::uint8_t> bytes_;
  std::size_t pos_;
  std::size_t end_;
};

struct RawNote {
  int pitch;
  int velocity;
  std::int64_t on;
  std::int64_t off;
};

struct TrackData {
  std::string name;
  std::map<int, std::vector<RawNote>> notes;  // by channel
  std::map<int, int> programs;                // first program change per channel
  std::int64_t end_tick = 0;
};

struct TimeSig {
  std::int64_t tick;
  Metre metre;
};

struct Tempo {
  std::int64_t tick;
  double bpm;
};

TrackData read_track(ByteReader& r, std::vector<TimeSig>& sigs, std::vector<Tempo>& tempos,
                     SmfDiagnostics& diag, int track_no) {
  TrackData t;
  std::int64_t tick = 0;
  std::uint8_t status = 0;
  // open notes per (channel, pitch), FIFO
  std::map<std::pair<int, int>, std::vector<std::pair<std::int64_t, int>>> open;

  auto close_note = [&](int ch, int pitch) {
    auto it = open.find({ch, pitch});
    if (it == open.end() || it->second.empty()) return;
    auto [on, vel] = it->second.front();
    it->second.erase(it->second.begin());
    if (tick == on) {
      diag.warnings.push_back("track " + std::to_string(track_no) + ": zero-length note dropped");
      return;
    }
    t.notes[ch].push_back(RawNote{pitch, vel, on, tick});
  };

  bool ended = false;
  while (!r.at_end() && !ended) {
    tick += r.vlq();
    std::size_t event_offset = r.offset();
    std::uint8_t b = r.u8();
    if (b == 0xFF) {
      status = 0;
      std::uint8_t type = r.u8();
      auto data = r.take(r.vlq());
      switch (type) {
        case 0x2F: ended = true; break;
        case 0x03: t.name.assign(data.begin(), data.end()); break;
        case 0x51:
          if (data.size() != 3) throw BinaryParseError("tempo event must have 3 data bytes", event_offset);
          tempos.push_back({tick, 60e6 / double((data[0] << 16) | (data[1] << 8) | data[2])});
          break;
        case 0x58: {
          if (data.size() != 4) throw BinaryParseError("time signature must have 4 data bytes", event_offset);
          if (data[0] == 0 || data[1] > 5) throw BinaryParseError("invalid time signature", event_offset);
          sigs.push_back({tick, Metre{data[0], 1 << data[1]}});
          break;
        }
        default: break;
      }
      continue;
    }
    if (b == 0xF0 || b == 0xF7) {
      status = 0;
      r.take(r.vlq());
      continue;
    }
    std::uint8_t first;
    if (b & 0x80) {
      if (b >= 0xF0) throw BinaryParseError("unsupported system message", event_offset);
      status = b;
      first = r.u8();
    } else {
      if (!status) throw BinaryParseError("data byte without running status", event_offset);
      first = b;
    }
    int kind = status & 0xF0;
    int ch = status & 0x0F;
    int second = (kind == 0xC0 || kind == 0xD0) ? -1 : r.u8();
    if (kind == 0x90 && second > 0) {
      open[{ch, first}].push_back({tick, second});
    } else if (kind == 0x80 || kind == 0x90) {
      close_note(ch, first);
    } else if (kind == 0xC0) {
      t.programs.emplace(ch, first);
    }
  }
  t.end_tick = tick;
  for (auto& [key, list] : open) {
    while (!list.empty()) {
      diag.unclosed_notes = true;
      diag.warnings.push_back("track " + std::to_string(track_no) + ": note " + std::to_string(key.second) +
                              " never released; closed at final tick");
      close_note(key.first, key.second);
    }
  }
  return t;
}

std::vector<Section> build_sections(std::vector<TimeSig> sigs, int tpq) {
  std::stable_sort(sigs.begin(), sigs.end(), [](const TimeSig& a, const TimeSig& b) { return a.tick < b.tick; });
  std::vector<Section> sections{Section{}};
  for (const auto& sig : sigs) {
    Position pos = locate(Rational(sig.tick, tpq), sections);
    int bar = pos.beat == Rational(0) ? pos.bar : pos.bar + 1;
    if (sections.back().start_bar == bar) {
      sections.back().metre = sig.metre;
    } else if (sections.back().metre != sig.metre) {
      sections.push_back(Section{bar, sig.metre, {}});
    }
  }
  return sections;
}

std::string sanitize(std::string name) {
  for (char& c : name)
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r') c = '_';
  return name;
}

}  // namespace

Score parse_smf(std::span<const std::uint8_t> bytes, SmfDiagnostics* diagnostics) {
  SmfDiagnostics local;
  SmfDiagnostics& diag = diagnostics ? *diagnostics : local;
  diag = SmfDiagnostics{};

  ByteReader head(bytes, 0, bytes.size());
  auto magic = head.take(4);
  if (!std::equal(magic.begin(), magic.end(), "MThd")) throw BinaryParseError("missing MThd header", 0);
  if (head.be(4) != 6) throw BinaryParseError("MThd length must be 6", 4);
  diag.format = static_cast<int>(head.be(2));
  diag.declared_tracks = static_cast<int>(head.be(2));
  std::uint32_t division = head.be(2);
  if (diag.format > 1) throw UnsupportedFormat("SMF format " + std::to_string(diag.format) + " is not supported");
  if (division & 0x8000) throw UnsupportedFormat("SMPTE time division is not supported");
  if (division == 0) throw BinaryParseError("ticks per quarter must be positive", 12);
  if (diag.format == 0 && diag.declared_tracks != 1) throw BinaryParseError("format 0 requires exactly one track", 10);
  const int tpq = static_cast<int>(division);

  std::vector<TimeSig> sigs;
  std::vector<Tempo> tempos;
  std::vector<TrackData> tracks;
  std::size_t pos = head.offset();
  while (static_cast<int>(tracks.size()) < diag.declared_tracks) {
    if (pos >= bytes.size())
      throw BinaryParseError("header declares " + std::to_string(diag.declared_tracks) + " tracks but only " +
                                 std::to_string(tracks.size()) + " present",
                             pos);
    ByteReader chunk(bytes, pos, bytes.size());
    auto id = chunk.take(4);
    std::uint32_t len = chunk.be(4);
    std::size_t body = chunk.offset();
    if (len > bytes.size() - body) throw BinaryParseError("truncated chunk", pos);
    if (std::equal(id.begin(), id.end(), "MTrk")) {
      ByteReader track(bytes, body, body + len);
      tracks.push_back(read_track(track, sigs, tempos, diag, static_cast<int>(tracks.size())));
    }
    pos = body + len;
  }

  Score score;
  score.ticks_per_quarter = tpq;
  std::stable_sort(tempos.begin(), tempos.end(), [](const Tempo& a, const Tempo& b) { return a.tick < b.tick; });
  for (const auto& t : tempos) {
    Rational at(t.tick, tpq);
    if (!score.tempos.empty() && score.tempos.back().abs_beats == at)
      score.tempos.back().bpm = t.bpm;
    else
      score.tempos.push_back(TempoMark{at, t.bpm});
  }
  const std::vector<Section> sections = build_sections(sigs, tpq);

  std::set<std::string> used_names;
  for (std::size_t ti = 0; ti < tracks.size(); ++ti) {
    const TrackData& track = tracks[ti];
    for (const auto& [ch, raw] : track.notes) {
      std::string name = track.name.empty() ? "Track" + std::to_string(ti + 1) : sanitize(track.name);
      if (track.notes.size() > 1) name += "-ch" + std::to_string(ch + 1);
      std::string unique = name;
      for (int k = 2; used_names.count(unique); ++k) unique = name + "-" + std::to_string(k);
      used_names.insert(unique);

      Part part;
      part.name = unique;
      auto prog = track.programs.find(ch);
      part.midi_program = prog == track.programs.end() ? 0 : prog->second;
      part.staff = static_cast<int>(score.parts.size()) + 1;

      std::vector<RawNote> notes = raw;
      std::stable_sort(notes.begin(), notes.end(), [](const RawNote& a, const RawNote& b) {
        return a.on != b.on ? a.on < b.on : a.pitch < b.pitch;
      });
      double mean_pitch = std::accumulate(notes.begin(), notes.end(), 0.0,
                                          [](double acc, const RawNote& n) { return acc + n.pitch; }) /
                          static_cast<double>(notes.size());
      Clef clef{mean_pitch < 60.0 ? ClefKind::Bass : ClefKind::Treble, {}};
      part.sections = sections;
      for (auto& s : part.sections) s.clef = clef;

      std::vector<std::int64_t> voice_end;
      std::vector<std::vector<const RawNote*>> voice_notes;
      for (const auto& n : notes) {
        std::size_t v = 0;
        while (v < voice_end.size() && voice_end[v] > n.on) ++v;
        if (v == voice_end.size()) {
          voice_end.push_back(0);
          voice_notes.emplace_back();
        }
        voice_end[v] = n.off;
        voice_notes[v].push_back(&n);
      }
      for (std::size_t v = 0; v < voice_notes.size(); ++v) {
        Voice voice{static_cast<int>(v) + 1, {}};
        std::int64_t cursor = 0;
        for (const RawNote* n : voice_notes[v]) {
          if (n->on > cursor) {
            Rational at(cursor, tpq);
            voice.events.push_back(SymbolicEvent::rest(locate(at, part.sections), Rational(n->on - cursor, tpq)));
          }
          Rational at(n->on, tpq);
          voice.events.push_back(SymbolicEvent::note(spell_midi_pitch(n->pitch), locate(at, part.sections),
                                                     Rational(n->off - n->on, tpq),
                                                     Dynamic{std::nullopt, n->velocity}));
          cursor = n->off;
        }
        part.voices.push_back(std::move(voice));
      }
      score.parts.push_back(std::move(part));
    }
  }
  if (score.parts.empty()) throw InputError("MIDI file contains no notes");
  if (!tracks.empty() && !tracks.front().name.empty()) score.title = tracks.front().name;
  validate(score);
  return score;
}

namespace {

void put_be(std::vector<std::uint8_t>& out, std::uint32_t v, int n) {
  for (int i = n - 1; i >= 0; --i) out.push_back(static_cast<std::uint8_t>((v >> (8 * i)) & 0xFF));
}

void put_vlq(std::vector<std::uint8_t>& out, std::uint32_t v) {
  std::uint8_t buf[5];
  int n = 0;
  buf[n++] = v & 0x7F;
  while (v >>= 7) buf[n++] = static_cast<std::uint8_t>((v & 0x7F) | 0x80);
  while (n) out.push_back(buf[--n]);
}

struct TimedBytes {
  std::int64_t tick;
  int order;  // note-offs before note-ons at equal ticks
  std::vector<std::uint8_t> data;
};

void put_track(std::vector<std::uint8_t>& out, std::vector<TimedBytes> events) {
  std::stable_sort(events.begin(), events.end(), [](const TimedBytes& a, const TimedBytes& b) {
    return a.tick != b.tick ? a.tick < b.tick : a.order < b.order;
  });
  std::vector<std::uint8_t> body;
  std::int64_t last = 0;
  for (const auto& e : events) {
    put_vlq(body, static_cast<std::uint32_t>(e.tick - last));
    body.insert(body.end(), e.data.begin(), e.data.end());
    last = e.tick;
  }
  body.insert(body.end(), {0x00, 0xFF, 0x2F, 0x00});
  out.insert(out.end(), {'M', 'T', 'r', 'k'});
  put_be(out, static_cast<std::uint32_t>(body.size()), 4);
  out.insert(out.end(), body.begin(), body.end());
}

std::int64_t to_ticks(const Rational& beats, int tpq) {
  Rational t = beats * tpq;
  return static_cast<std::int64_t>(std::llround(to_double(t)));
}

}  // namespace

std::vector<std::uint8_t> write_smf(const Score& score) {
  const int tpq = score.ticks_per_quarter;
  std::vector<std::uint8_t> out{'M', 'T', 'h', 'd'};
  put_be(out, 6, 4);
  put_be(out, 1, 2);
  put_be(out, static_cast<std::uint32_t>(score.parts.size() + 1), 2);
  put_be(out, static_cast<std::uint32_t>(tpq), 2);

  std::vector<TimedBytes> conductor;
  for (const auto& t : score.tempos) {
    auto usec = static_cast<std::uint32_t>(std::lround(60e6 / t.bpm));
    conductor.push_back({to_ticks(t.abs_beats, tpq), 0,
                         {0xFF, 0x51, 0x03, std::uint8_t(usec >> 16), std::uint8_t(usec >> 8), std::uint8_t(usec)}});
  }
  if (!score.parts.empty()) {
    const auto& sections = score.parts.front().sections;
    for (const auto& s : sections) {
      int pow = 0;
      while ((1 << pow) < s.metre.denominator) ++pow;
      conductor.push_back({to_ticks(abs_beats_of(s.start_bar, Rational(0), sections), tpq), 0,
                           {0xFF, 0x58, 0x04, std::uint8_t(s.metre.numerator), std::uint8_t(pow), 24, 8}});
    }
  }
  put_track(out, std::move(conductor));

  for (std::size_t p = 0; p < score.parts.size(); ++p) {
    const Part& part = score.parts[p];
    auto ch = static_cast<std::uint8_t>(p % 16);
    std::vector<TimedBytes> events;
    std::vector<std::uint8_t> name{0xFF, 0x03};
    put_vlq(name, static_cast<std::uint32_t>(part.name.size()));
    name.insert(name.end(), part.name.begin(), part.name.end());
    events.push_back({0, -1, name});
    events.push_back({0, -1, {std::uint8_t(0xC0 | ch), std::uint8_t(part.midi_program)}});
    for (const auto& voice : part.voices) {
      for (const auto& e : voice.events) {
        if (e.is_rest()) continue;
        auto pitch = static_cast<std::uint8_t>(*e.midi_pitch());
        auto vel = static_cast<std::uint8_t>(std::clamp(e.effective_velocity(), 1, 127));
        events.push_back({to_ticks(e.position.abs_beats, tpq), 1, {std::uint8_t(0x90 | ch), pitch, vel}});
        events.push_back({to_ticks(e.end_beats(), tpq), 0, {std::uint8_t(0x80 | ch), pitch, 0}});
      }
    }
    put_track(out, std::move(events));
  }
  return out;
}

}  // namespace hamse
