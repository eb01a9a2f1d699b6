#pragma once

#include <optional>
#include <string>

#include "hamse/audio.h"
#include "hamse/harmony.h"

namespace hamse {

enum class Quadrant { Q1, Q2, Q3, Q4 };

std::string to_string(Quadrant q);
std::optional<Quadrant> parse_quadrant(std::string_view text);

/// Q1 = (v >= 0, a >= 0), Q2 = (v < 0, a >= 0), Q3 = (v < 0, a < 0), Q4 = (v >= 0, a < 0).
Quadrant quadrant_of(double valence, double arousal);

struct EmotionTag {
  Quadrant quadrant = Quadrant::Q1;
  double valence = 0.0;
  double arousal = 0.0;
  std::string method = "heuristic-v1";
};

/// Mean of per-window RMS over consecutive 1 s windows; a trailing partial
/// window counts as its own window.
double mean_windowed_rms(const AudioClip& clip);

struct EmotionFeatures {
  double mean_rms = 0.0;
  std::optional<Mode> mode;
  double tempo_bpm = 100.0;
  double dissonance_rate = 0.0;
};

/// arousal = clamp(((rms - 0.1) / 0.1 + (tempo - 100) / 60) / 2, -1, 1)
/// valence = clamp(+-0.5 + 0.25 (1 - d) - 0.25 d, -1, 1), sign from the mode.
/// Throws InputError when the mode is missing.
EmotionTag classify_emotion(const EmotionFeatures& features);

/// Measures RMS from the clip and reads the mode from the key estimate.
/// Throws InputError for an empty clip or a missing key estimate.
EmotionTag classify_emotion(const AudioClip& clip, const std::optional<KeyEstimate>& key, double score_tempo_bpm,
                            double dissonance_rate);

}  // namespace hamse
