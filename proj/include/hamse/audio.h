#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "hamse/score.h"

namespace hamse {

struct AudioClip {
  std::vector<double> samples;  // mono, [-1, 1]
  int sample_rate = 44100;

  double duration_s() const { return static_cast<double>(samples.size()) / sample_rate; }
};

/// RIFF/WAVE, PCM 16-bit or IEEE float 32-bit, mono or stereo. Stereo is
/// averaged to mono and PCM is scaled by 1/32768.
AudioClip read_wav(std::span<const std::uint8_t> bytes);

/// 16-bit PCM mono. Samples are clamped to [-1, 1).
std::vector<std::uint8_t> write_wav_pcm16(const AudioClip& clip);

/// 32-bit float mono.
std::vector<std::uint8_t> write_wav_float32(const AudioClip& clip);

using ChromaVector = std::array<double, 12>;

enum class ChromaOrigin { Audio, Symbolic };

struct Chromagram {
  std::vector<ChromaVector> frames;  // one 12-bin column per frame
  double hop_s = 0.0;
  ChromaOrigin origin = ChromaOrigin::Audio;

  std::size_t size() const { return frames.size(); }
};

struct AudioChromaOptions {
  int frame_len = 2048;
  int hop = 512;
  double min_hz = 55.0;
  double max_hz = 8000.0;
};

/// Hann-windowed STFT, bin energies folded onto pitch classes and each column
/// max-normalized. Throws InputError when the clip is shorter than one frame.
Chromagram chroma_from_audio(const AudioClip& clip, const AudioChromaOptions& options = {});

/// Pitch class of a bin frequency: round(12 log2(f / 440) + 69) mod 12.
int pitch_class_of_frequency(double hz);

/// Renders the score directly on a frame grid: each sounding note adds
/// velocity/127 to its pitch class and half that to the class a fifth above.
/// Columns are max-normalized. Throws InputError for a score without events.
Chromagram chroma_from_score(const Score& score, double tempo_bpm, double hop_s);

}  // namespace hamse
