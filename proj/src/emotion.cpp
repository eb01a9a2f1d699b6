#include "hamse/emotion.h"

#include <algorithm>
#include <cmath>

#include "hamse/error.h"

namespace hamse {

std::string to_string(Quadrant q) {
  switch (q) {
    case Quadrant::Q1: return "Q1";
    case Quadrant::Q2: return "Q2";
    case Quadrant::Q3: return "Q3";
    case Quadrant::Q4: return "Q4";
  }
  return "Q?";
}

std::optional<Quadrant> parse_quadrant(std::string_view text) {
  if (text == "Q1") return Quadrant::Q1;
  if (text == "Q2") return Quadrant::Q2;
  if (text == "Q3") return Quadrant::Q3;
  if (text == "Q4") return Quadrant::Q4;
  return std::nullopt;
}

Quadrant quadrant_of(double valence, double arousal) {
  if (arousal >= 0.0) return valence >= 0.0 ? Quadrant::Q1 : Quadrant::Q2;
  return valence >= 0.0 ? Quadrant::Q4 : Quadrant::Q3;
}

double mean_windowed_rms(const AudioClip& clip) {
  if (clip.samples.empty()) throw InputError("empty clip");
  const std::size_t window = static_cast<std::size_t>(clip.sample_rate);
  double total = 0.0;
  std::size_t windows = 0;
  for (std::size_t start = 0; start < clip.samples.size(); start += window) {
    std::size_t end = std::min(clip.samples.size(), start + window);
    double sq = 0.0;
    for (std::size_t i = start; i < end; ++i) sq += clip.samples[i] * clip.samples[i];
    total += std::sqrt(sq / static_cast<double>(end - start));
    ++windows;
  }
  return total / static_cast<double>(windows);
}

EmotionTag classify_emotion(const EmotionFeatures& f) {
  if (!f.mode) throw InputError("emotion tagging needs a key estimate");
  const double rms_z = (f.mean_rms - 0.1) / 0.1;
  const double tempo_z = (f.tempo_bpm - 100.0) / 60.0;
  const double d = std::clamp(f.dissonance_rate, 0.0, 1.0);

  EmotionTag tag;
  tag.arousal = std::clamp((rms_z + tempo_z) / 2.0, -1.0, 1.0);
  const double base = *f.mode == Mode::Major ? 0.5 : -0.5;
  tag.valence = std::clamp(base + 0.25 * (1.0 - d) - 0.25 * d, -1.0, 1.0);
  tag.quadrant = quadrant_of(tag.valence, tag.arousal);
  return tag;
}

EmotionTag classify_emotion(const AudioClip& clip, const std::optional<KeyEstimate>& key, double score_tempo_bpm,
                            double dissonance_rate) {
  if (!key) throw InputError("emotion tagging needs a key estimate");
  return classify_emotion(EmotionFeatures{mean_windowed_rms(clip), key->mode, score_tempo_bpm, dissonance_rate});
}

}  // namespace hamse
