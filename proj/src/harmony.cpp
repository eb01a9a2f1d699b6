#include "hamse/harmony.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "hamse/error.h"

namespace hamse {

const std::array<double, 12> kMajorProfile = {6.35, 2.23, 3.48, 2.33, 4.38, 4.09,
                                              2.52, 5.19, 2.39, 3.66, 2.29, 2.88};
const std::array<double, 12> kMinorProfile = {6.33, 2.68, 3.52, 5.38, 2.60, 3.53,
                                              2.54, 4.75, 3.98, 2.69, 3.34, 3.17};

std::string pitch_class_name(int pc) {
  static constexpr const char* names[12] = {"C", "C#", "D", "D#", "E", "F", "F#", "G", "G#", "A", "A#", "B"};
  return names[((pc % 12) + 12) % 12];
}

std::string to_string(Mode mode) { return mode == Mode::Major ? "major" : "minor"; }

std::string KeyEstimate::label() const { return pitch_class_name(tonic_pc) + " " + to_string(mode); }

std::vector<ChordSlice> chordify(const Score& score) {
  if (score.event_count() == 0) throw DomainError("cannot chordify an empty score");
  struct Sounding {
    Rational start, end;
    int pitch;
  };
  std::vector<Sounding> notes;
  std::set<Rational> bounds;
  for (const auto& part : score.parts)
    for (const auto& voice : part.voices)
      for (const auto& e : voice.events) {
        if (e.is_rest()) continue;
        notes.push_back({e.position.abs_beats, e.end_beats(), *e.midi_pitch()});
        bounds.insert(e.position.abs_beats);
        bounds.insert(e.end_beats());
      }
  std::vector<ChordSlice> slices;
  if (notes.empty()) return slices;

  const auto& sections = score.parts.front().sections;
  std::vector<Rational> b(bounds.begin(), bounds.end());
  for (std::size_t i = 0; i + 1 < b.size(); ++i) {
    std::set<int> pitches;
    for (const auto& n : notes)
      if (n.start <= b[i] && n.end >= b[i + 1]) pitches.insert(n.pitch);
    ChordSlice s;
    s.onset = locate(b[i], sections);
    s.duration = b[i + 1] - b[i];
    s.pitches.assign(pitches.begin(), pitches.end());
    std::set<int> pcs;
    for (int p : pitches) pcs.insert(p % 12);
    s.pitch_classes.assign(pcs.begin(), pcs.end());
    s.label = s.pitches.empty() ? "rest" : label_chord(s.pitch_classes, s.pitches.front() % 12);
    slices.push_back(std::move(s));
  }
  return slices;
}

std::string label_chord(const std::vector<int>& pitch_classes, std::optional<int> bass_pc) {
  if (pitch_classes.empty()) throw DomainError("cannot label an empty pitch-class set");
  std::set<int> pcs;
  for (int pc : pitch_classes) pcs.insert(((pc % 12) + 12) % 12);

  struct Template {
    const char* quality;
    std::vector<int> tones;
  };
  static const std::vector<Template> templates = {
      {"maj", {0, 4, 7}},      {"min", {0, 3, 7}},      {"dim", {0, 3, 6}},      {"aug", {0, 4, 8}},
      {"dom7", {0, 4, 7, 10}}, {"maj7", {0, 4, 7, 11}}, {"min7", {0, 3, 7, 10}},
  };
  for (const auto& t : templates) {
    if (t.tones.size() != pcs.size()) continue;
    std::vector<int> roots;
    for (int r = 0; r < 12; ++r) {
      std::set<int> rotated;
      for (int tone : t.tones) rotated.insert((tone + r) % 12);
      if (rotated == pcs) roots.push_back(r);
    }
    if (roots.empty()) continue;
    int root = roots.front();
    if (bass_pc && std::find(roots.begin(), roots.end(), *bass_pc) != roots.end()) root = *bass_pc;
    return pitch_class_name(root) + t.quality;
  }
  std::string out = "pcset{";
  bool first = true;
  for (int pc : pcs) {
    if (!first) out += ',';
    out += std::to_string(pc);
    first = false;
  }
  return out + "}";
}

std::vector<ChordProgression> mine_progressions(const std::vector<ChordSlice>& slices, const MiningOptions& options) {
  std::vector<std::string> labels;
  std::vector<Position> starts;
  std::vector<Rational> ends;
  for (const auto& s : slices) {
    if (s.is_rest()) continue;
    if (!labels.empty() && labels.back() == s.label) {
      ends.back() = s.end_beats();
      continue;
    }
    labels.push_back(s.label);
    starts.push_back(s.onset);
    ends.push_back(s.end_beats());
  }
  const auto n_min = static_cast<std::size_t>(std::max(1, options.n_min));
  const auto n_max = static_cast<std::size_t>(std::max(options.n_min, options.n_max));
  const auto min_count = static_cast<std::size_t>(std::max(1, options.min_count));

  std::map<std::vector<std::string>, std::vector<std::size_t>> table;
  for (std::size_t n = n_min; n <= n_max && n <= labels.size(); ++n)
    for (std::size_t a = 0; a + n <= labels.size(); ++a)
      table[std::vector<std::string>(labels.begin() + a, labels.begin() + a + n)].push_back(a);

  std::vector<ChordProgression> out;
  for (auto& [key, occ] : table) {
    if (occ.size() < min_count) continue;
    ChordProgression p;
    p.labels = key;
    for (std::size_t i = 0; i < key.size(); ++i) p.key += (i ? "," : "") + key[i];
    p.count = occ.size();
    for (std::size_t a : occ) {
      p.occurrences.push_back(starts[a]);
      p.occurrence_ends.push_back(ends[a + key.size() - 1]);
    }
    out.push_back(std::move(p));
  }
  std::sort(out.begin(), out.end(), [](const ChordProgression& a, const ChordProgression& b) {
    return pattern_rank_less(a.count, a.labels.size(), a.key, b.count, b.labels.size(), b.key);
  });
  return out;
}

bool is_dissonant_interval_class(int ic) { return ic == 1 || ic == 2 || ic == 6 || ic == 10 || ic == 11; }

std::vector<DissonanceReport> find_dissonances(const std::vector<ChordSlice>& slices) {
  std::map<int, DissonanceReport> by_class;
  for (const auto& s : slices) {
    std::set<int> seen;
    for (std::size_t i = 0; i < s.pitches.size(); ++i)
      for (std::size_t j = i + 1; j < s.pitches.size(); ++j) {
        int ic = std::abs(s.pitches[j] - s.pitches[i]) % 12;
        if (!is_dissonant_interval_class(ic)) continue;
        auto& r = by_class[ic];
        r.interval_class = ic;
        ++r.count;
        if (seen.insert(ic).second) r.example_sites.push_back(s.onset);
      }
  }
  std::vector<DissonanceReport> out;
  for (auto& [ic, r] : by_class) out.push_back(std::move(r));
  std::stable_sort(out.begin(), out.end(),
                   [](const DissonanceReport& a, const DissonanceReport& b) { return a.count > b.count; });
  return out;
}

double dissonance_rate(const std::vector<ChordSlice>& slices) {
  std::size_t sounding = 0, dissonant = 0;
  for (const auto& s : slices) {
    if (s.is_rest()) continue;
    ++sounding;
    bool hit = false;
    for (std::size_t i = 0; i < s.pitches.size() && !hit; ++i)
      for (std::size_t j = i + 1; j < s.pitches.size() && !hit; ++j)
        hit = is_dissonant_interval_class(std::abs(s.pitches[j] - s.pitches[i]) % 12);
    dissonant += hit;
  }
  return sounding ? static_cast<double>(dissonant) / static_cast<double>(sounding) : 0.0;
}

std::array<double, 12> pitch_class_histogram(const Score& score) {
  std::array<double, 12> h{};
  for (const auto& part : score.parts)
    for (const auto& voice : part.voices)
      for (const auto& e : voice.events)
        if (!e.is_rest()) h[*e.midi_pitch() % 12] += to_double(e.duration);
  return h;
}

namespace {

// Pearson correlation between the histogram read from `tonic` upwards and the
// profile. Summing relative to the tonic makes transposed inputs bit-identical.
double correlate(const std::array<double, 12>& h, int tonic, const std::array<double, 12>& profile) {
  double sx = 0, sy = 0;
  for (int j = 0; j < 12; ++j) {
    sx += h[(tonic + j) % 12];
    sy += profile[j];
  }
  double mx = sx / 12.0, my = sy / 12.0;
  double sxy = 0, sxx = 0, syy = 0;
  for (int j = 0; j < 12; ++j) {
    double dx = h[(tonic + j) % 12] - mx;
    double dy = profile[j] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0) return 0.0;
  return sxy / std::sqrt(sxx * syy);
}

}  // namespace

std::vector<KeyCandidate> key_correlations(const std::array<double, 12>& histogram) {
  std::vector<KeyCandidate> out;
  for (int t = 0; t < 12; ++t) {
    out.push_back({t, Mode::Major, correlate(histogram, t, kMajorProfile)});
    out.push_back({t, Mode::Minor, correlate(histogram, t, kMinorProfile)});
  }
  return out;
}

KeyEstimate estimate_key(const Score& score) {
  if (score.note_count() == 0) throw DomainError("cannot estimate the key of a score without notes");
  auto candidates = key_correlations(pitch_class_histogram(score));
  std::stable_sort(candidates.begin(), candidates.end(),
                   [](const KeyCandidate& a, const KeyCandidate& b) { return a.correlation > b.correlation; });
  const auto& best = candidates[0];
  return KeyEstimate{best.tonic_pc, best.mode, best.correlation, candidates[1]};
}

}  // namespace hamse
