#include "hamse/patterns.h"

#include <algorithm>
#include <map>

namespace hamse {

std::string to_string(PatternFamily family) {
  switch (family) {
    case PatternFamily::Interval: return "interval";
    case PatternFamily::Rhythmic: return "rhythmic";
    case PatternFamily::Melodic: return "melodic";
  }
  return "?";
}

bool operator<(const Token& a, const Token& b) {
  if (a.rest != b.rest) return a.rest < b.rest;
  if (a.value != b.value) return a.value < b.value;
  return a.duration < b.duration;
}

namespace {

constexpr const char* kPitchClassNames[12] = {"C", "C#", "D", "D#", "E", "F", "F#", "G", "G#", "A", "A#", "B"};

}  // namespace

std::string to_string(const Token& t, PatternFamily family) {
  switch (family) {
    case PatternFamily::Interval:
      if (t.rest) return "R";
      return t.value > 0 ? "+" + std::to_string(t.value) : std::to_string(t.value);
    case PatternFamily::Rhythmic:
      return t.rest ? "R:" + to_string(t.duration) : to_string(t.duration);
    case PatternFamily::Melodic:
      return std::string(t.rest ? "R" : kPitchClassNames[t.value]) + ":" + to_string(t.duration);
  }
  return "?";
}

std::string pattern_key(const std::vector<Token>& tokens, PatternFamily family) {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i) out += ',';
    out += to_string(tokens[i], family);
  }
  return out;
}

TokenRuns tokenize(const Voice& voice, PatternKind kind) {
  const auto& ev = voice.events;
  TokenRuns runs;
  std::vector<SourcedToken> current;
  auto flush = [&] {
    if (!current.empty()) runs.push_back(std::move(current));
    current.clear();
  };

  if (kind.family == PatternFamily::Interval) {
    for (std::size_t i = 0; i + 1 < ev.size(); ++i) {
      const auto& a = ev[i];
      const auto& b = ev[i + 1];
      if (a.is_rest() || b.is_rest()) {
        if (!kind.include_rests) {
          flush();
          continue;
        }
        current.push_back({Token{true, 0, {}}, i, i + 1});
      } else {
        current.push_back({Token{false, *b.midi_pitch() - *a.midi_pitch(), {}}, i, i + 1});
      }
    }
  } else {
    for (std::size_t i = 0; i < ev.size(); ++i) {
      const auto& e = ev[i];
      if (e.is_rest() && !kind.include_rests) {
        flush();
        continue;
      }
      Token t{e.is_rest(), 0, e.duration};
      if (kind.family == PatternFamily::Melodic && !e.is_rest()) t.value = *e.midi_pitch() % 12;
      current.push_back({t, i, i});
    }
  }
  flush();
  return runs;
}

std::vector<Token> tokens_of(const Voice& voice, PatternKind kind) {
  std::vector<Token> out;
  for (const auto& run : tokenize(voice, kind))
    for (const auto& st : run) out.push_back(st.token);
  return out;
}

bool pattern_rank_less(std::size_t count_a, std::size_t len_a, const std::string& key_a, std::size_t count_b,
                       std::size_t len_b, const std::string& key_b) {
  if (count_a != count_b) return count_a > count_b;
  if (len_a != len_b) return len_a > len_b;
  return key_a < key_b;
}

void sort_occurrences(std::vector<PatternOccurrence>& occ, const Score& score) {
  std::map<std::string, std::size_t> order;
  for (std::size_t i = 0; i < score.parts.size(); ++i) order[score.parts[i].name] = i;
  std::stable_sort(occ.begin(), occ.end(), [&](const PatternOccurrence& a, const PatternOccurrence& b) {
    if (a.start.abs_beats != b.start.abs_beats) return a.start.abs_beats < b.start.abs_beats;
    if (a.part != b.part) return order[a.part] < order[b.part];
    return a.voice < b.voice;
  });
}

std::vector<PatternOccurrenceSet> mine_patterns(const Score& score, PatternKind kind, const MiningOptions& options) {
  const auto n_min = static_cast<std::size_t>(std::max(1, options.n_min));
  const auto n_max = static_cast<std::size_t>(std::max(options.n_min, options.n_max));
  const auto min_count = static_cast<std::size_t>(std::max(1, options.min_count));

  std::map<std::vector<Token>, std::vector<PatternOccurrence>> table;
  for (const auto& part : score.parts) {
    for (const auto& voice : part.voices) {
      for (const auto& run : tokenize(voice, kind)) {
        for (std::size_t n = n_min; n <= n_max && n <= run.size(); ++n) {
          for (std::size_t a = 0; a + n <= run.size(); ++a) {
            std::vector<Token> key;
            key.reserve(n);
            for (std::size_t k = a; k < a + n; ++k) key.push_back(run[k].token);
            const auto& first = voice.events[run[a].first_event];
            const auto& last = voice.events[run[a + n - 1].last_event];
            table[std::move(key)].push_back(
                {part.name, voice.index, first.position, locate(last.end_beats(), part.sections)});
          }
        }
      }
    }
  }

  std::vector<PatternOccurrenceSet> out;
  for (auto& [tokens, occ] : table) {
    if (occ.size() < min_count) continue;
    PatternOccurrenceSet set;
    set.kind = kind;
    set.tokens = tokens;
    set.key = pattern_key(tokens, kind.family);
    set.length = tokens.size();
    set.count = occ.size();
    set.occurrences = std::move(occ);
    sort_occurrences(set.occurrences, score);
    out.push_back(std::move(set));
  }
  std::sort(out.begin(), out.end(), [](const PatternOccurrenceSet& a, const PatternOccurrenceSet& b) {
    return pattern_rank_less(a.count, a.length, a.key, b.count, b.length, b.key);
  });
  return out;
}

}  // namespace hamse
