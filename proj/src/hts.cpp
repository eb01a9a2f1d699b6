#include "hamse/hts.h"

#include <algorithm>
#include <charconv>
#include <map>
#include <sstream>

#include "hamse/error.h"

namespace hamse {
namespace {

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    if (i >= line.size()) break;
    std::size_t start = i;
    if (line.substr(i).starts_with("title=\"")) {
      // quoted value may contain spaces; \" and \\ are escapes
      i += 7;
      while (i < line.size() && line[i] != '"') i += line[i] == '\\' ? 2 : 1;
      if (i >= line.size()) throw ParseError("unterminated quoted title", 0);
      ++i;
    } else {
      while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
    }
    out.push_back(line.substr(start, i - start));
  }
  return out;
}

std::optional<int> to_int(std::string_view s) {
  int v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

std::string unquote(std::string_view q) {
  std::string out;
  for (std::size_t i = 1; i + 1 < q.size(); ++i) {
    if (q[i] == '\\' && i + 2 < q.size()) ++i;
    out += q[i];
  }
  return out;
}

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + '"';
}

struct PendingEvent {
  std::size_t line;
  std::size_t part;
  int voice;
  int bar;
  Rational beat;
  SymbolicEvent event;
};

class HtsParser {
 public:
  Score run(std::string_view text) {
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
      std::size_t nl = text.find('\n', pos);
      std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
      ++line_no;
      if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
      try {
        handle_line(line, line_no);
      } catch (const ParseError& e) {
        if (e.line() == 0) throw ParseError(e.what(), line_no);
        throw;
      }
      if (nl == std::string_view::npos) break;
      pos = nl + 1;
    }
    return finish();
  }

 private:
  Score score_;
  std::map<std::string, std::size_t> part_index_;
  std::vector<PendingEvent> events_;
  bool score_seen_ = false;

  [[noreturn]] static void error(const std::string& what, std::size_t line) { throw ParseError(what, line); }

  void handle_line(std::string_view line, std::size_t n) {
    auto first = line.find_first_not_of(" \t");
    if (first == std::string_view::npos || line.substr(first).starts_with("//")) return;
    auto fields = split_fields(line);
    if (line.front() == '#') {
      if (fields[0] == "#score") return score_directive(fields, n);
      if (fields[0] == "#part") return part_directive(fields, n);
      if (fields[0] == "#section") return section_directive(fields, n);
      error("unknown directive '" + std::string(fields[0]) + "'", n);
    }
    event_line(fields, n);
  }

  void score_directive(const std::vector<std::string_view>& f, std::size_t n) {
    if (score_seen_) error("duplicate #score directive", n);
    if (!events_.empty() || !score_.parts.empty()) error("#score must precede parts and events", n);
    score_seen_ = true;
    for (std::size_t i = 1; i < f.size(); ++i) {
      auto eq = f[i].find('=');
      if (eq == std::string_view::npos) error("expected key=value, got '" + std::string(f[i]) + "'", n);
      auto key = f[i].substr(0, eq);
      auto value = f[i].substr(eq + 1);
      if (key == "tpq") {
        auto v = to_int(value);
        if (!v || *v <= 0) error("tpq must be a positive integer", n);
        score_.ticks_per_quarter = *v;
      } else if (key == "title") {
        if (value.size() < 2 || value.front() != '"' || value.back() != '"') error("title must be quoted", n);
        score_.title = unquote(value);
      } else if (key == "work") {
        if (value.empty()) error("empty work id", n);
        score_.work_ref = std::string(value);
      } else if (key == "tempo") {
        double bpm = 0;
        auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), bpm);
        if (ec != std::errc{} || ptr != value.data() + value.size() || bpm <= 0) error("tempo must be positive", n);
        score_.tempos = {TempoMark{Rational(0), bpm}};
      } else {
        error("unknown #score key '" + std::string(key) + "'", n);
      }
    }
  }

  void part_directive(const std::vector<std::string_view>& f, std::size_t n) {
    if (f.size() != 4) error("#part expects <name> <program> <staff>", n);
    std::string name(f[1]);
    if (part_index_.count(name)) error("part '" + name + "' declared twice", n);
    auto program = to_int(f[2]);
    auto staff = to_int(f[3]);
    if (!program || *program < 0 || *program > 127) error("MIDI program must be 0-127", n);
    if (!staff || *staff < 1) error("staff must be a positive integer", n);
    part_index_[name] = score_.parts.size();
    score_.parts.push_back(Part{name, *program, *staff, {}, {}});
  }

  void section_directive(const std::vector<std::string_view>& f, std::size_t n) {
    if (f.size() != 5) error("#section expects <part> <num>/<den> <clef> startbar=<int>", n);
    auto it = part_index_.find(std::string(f[1]));
    if (it == part_index_.end()) error("undeclared part '" + std::string(f[1]) + "'", n);
    auto slash = f[2].find('/');
    if (slash == std::string_view::npos) error("metre must be <num>/<den>", n);
    auto num = to_int(f[2].substr(0, slash));
    auto den = to_int(f[2].substr(slash + 1));
    if (!num || *num < 1) error("metre numerator must be positive", n);
    if (!den || (*den != 1 && *den != 2 && *den != 4 && *den != 8 && *den != 16 && *den != 32))
      error("metre denominator must be a power of two up to 32", n);
    if (!f[4].starts_with("startbar=")) error("expected startbar=<int>", n);
    auto start = to_int(f[4].substr(9));
    if (!start || *start < 1) error("startbar must be positive", n);
    Part& part = score_.parts[it->second];
    if (!part.sections.empty() && part.sections.back().start_bar >= *start)
      error("sections must be declared in increasing bar order", n);
    part.sections.push_back(Section{*start, Metre{*num, *den}, Clef::from_name(f[3])});
  }

  void event_line(const std::vector<std::string_view>& f, std::size_t n) {
    if (f.size() < 3) error("event expects <bar>:<beat> <duration> <pitch|R>", n);
    auto colon = f[0].find(':');
    if (colon == std::string_view::npos) error("position must be <bar>:<beat>", n);
    auto bar = to_int(f[0].substr(0, colon));
    auto beat = parse_rational(f[0].substr(colon + 1));
    if (!bar || *bar < 1) error("bar must be a positive integer", n);
    if (!beat || *beat < 0) error("beat must be a non-negative rational", n);
    auto dur = parse_rational(f[1]);
    if (!dur || *dur <= 0) error("duration must be a positive rational", n);

    SymbolicEvent ev;
    ev.duration = *dur;
    if (f[2] != "R") {
      auto pitch = parse_pitch(f[2]);
      if (!pitch) error("malformed pitch '" + std::string(f[2]) + "'", n);
      ev.pitch = *pitch;
    }
    int voice = 1;
    std::optional<std::size_t> part;
    if (!score_.parts.empty()) part = score_.parts.size() - 1;
    Dynamic dyn;
    for (std::size_t i = 3; i < f.size(); ++i) {
      auto eq = f[i].find('=');
      if (eq == std::string_view::npos) error("expected key=value, got '" + std::string(f[i]) + "'", n);
      auto key = f[i].substr(0, eq);
      auto value = f[i].substr(eq + 1);
      if (key == "vel") {
        auto v = to_int(value);
        if (!v || *v < 0 || *v > 127) error("velocity must be 0-127", n);
        dyn.midi_velocity = *v;
      } else if (key == "voice") {
        auto v = to_int(value);
        if (!v || *v < 1) error("voice must be a positive integer", n);
        voice = *v;
      } else if (key == "dyn") {
        if (value.empty()) error("empty dynamic", n);
        dyn.literal = std::string(value);
      } else if (key == "part") {
        auto it = part_index_.find(std::string(value));
        if (it == part_index_.end()) error("undeclared part '" + std::string(value) + "'", n);
        part = it->second;
      } else {
        error("unknown event key '" + std::string(key) + "'", n);
      }
    }
    if (!part) error("event before any #part declaration", n);
    if (dyn.literal || dyn.midi_velocity) {
      if (ev.is_rest()) error("rests cannot carry dynamics", n);
      ev.dynamic = dyn;
    }
    events_.push_back(PendingEvent{n, *part, voice, *bar, *beat, std::move(ev)});
  }

  Score finish() {
    if (score_.parts.empty()) throw ParseError("no parts declared", 0);
    for (auto& part : score_.parts)
      if (part.sections.empty()) part.sections.push_back(Section{});

    // voices keep their order of first appearance
    std::vector<std::vector<Voice>> voices(score_.parts.size());
    for (auto& pe : events_) {
      Part& part = score_.parts[pe.part];
      try {
        pe.event.position = Position{pe.bar, pe.beat, abs_beats_of(pe.bar, pe.beat, part.sections)};
      } catch (const RangeError& e) {
        error(e.what(), pe.line);
      }
      auto& list = voices[pe.part];
      auto it = std::find_if(list.begin(), list.end(), [&](const Voice& v) { return v.index == pe.voice; });
      if (it == list.end()) it = list.insert(list.end(), Voice{pe.voice, {}});
      it->events.push_back(pe.event);
    }
    // overlap check needs line numbers, so sort pending indices per voice
    std::map<std::pair<std::size_t, int>, std::vector<const PendingEvent*>> by_voice;
    for (const auto& pe : events_) by_voice[{pe.part, pe.voice}].push_back(&pe);
    for (auto& [key, list] : by_voice) {
      std::stable_sort(list.begin(), list.end(), [](const PendingEvent* a, const PendingEvent* b) {
        return a->event.position.abs_beats < b->event.position.abs_beats;
      });
      for (std::size_t i = 1; i < list.size(); ++i)
        if (list[i]->event.position.abs_beats < list[i - 1]->event.end_beats())
          error("event overlaps the previous event in voice " + std::to_string(key.second), list[i]->line);
    }

    for (std::size_t p = 0; p < score_.parts.size(); ++p) {
      Part& part = score_.parts[p];
      for (auto& v : voices[p]) {
        std::stable_sort(v.events.begin(), v.events.end(), [](const SymbolicEvent& a, const SymbolicEvent& b) {
          return a.position.abs_beats < b.position.abs_beats;
        });
        part.voices.push_back(std::move(v));
      }
      if (part.voices.empty()) part.voices.push_back(Voice{1, {}});
    }
    validate(score_);
    return std::move(score_);
  }
};

}  // namespace

Score parse_hts(std::string_view text) { return HtsParser{}.run(text); }

std::string write_hts(const Score& score) {
  std::ostringstream out;
  out << "#score tpq=" << score.ticks_per_quarter;
  if (score.title) out << " title=" << quote(*score.title);
  out << " work=" << score.work_ref;
  if (!score.tempos.empty()) {
    std::ostringstream bpm;
    bpm.precision(17);
    bpm << score.tempos.front().bpm;
    out << " tempo=" << bpm.str();
  }
  out << '\n';
  for (const auto& part : score.parts) {
    out << "#part " << part.name << ' ' << part.midi_program << ' ' << part.staff << '\n';
    for (const auto& s : part.sections)
      out << "#section " << part.name << ' ' << s.metre.numerator << '/' << s.metre.denominator << ' '
          << s.clef.name() << " startbar=" << s.start_bar << '\n';
    bool tag_voices = part.voices.size() > 1 || part.voices.front().index != 1;
    for (const auto& voice : part.voices) {
      for (const auto& e : voice.events) {
        out << e.position.bar << ':' << to_string(e.position.beat) << ' ' << to_string(e.duration) << ' '
            << (e.pitch ? to_string(*e.pitch) : std::string("R"));
        if (e.dynamic && e.dynamic->midi_velocity) out << " vel=" << *e.dynamic->midi_velocity;
        if (tag_voices) out << " voice=" << voice.index;
        if (e.dynamic && e.dynamic->literal) out << " dyn=" << *e.dynamic->literal;
        out << '\n';
      }
    }
  }
  return out.str();
}

}  // namespace hamse
