#include <algorithm>
#include <cmath>
#include <complex>
#include <memory>
#include <mutex>
#include <numbers>

#include <fftw3.h>

#include "hamse/audio.h"
#include "hamse/error.h"

namespace hamse {
namespace {

// FFTW planning is not thread-safe; execution on plan-private buffers is.
std::mutex& fftw_planner_mutex() {
  static std::mutex m;
  return m;
}

class RealFft {
 public:
  explicit RealFft(int n) : n_(n) {
    in_ = fftw_alloc_real(n);
    out_ = fftw_alloc_complex(n / 2 + 1);
    std::lock_guard lock(fftw_planner_mutex());
    plan_ = fftw_plan_dft_r2c_1d(n, in_, out_, FFTW_ESTIMATE);
  }
  ~RealFft() {
    {
      std::lock_guard lock(fftw_planner_mutex());
      fftw_destroy_plan(plan_);
    }
    fftw_free(in_);
    fftw_free(out_);
  }
  RealFft(const RealFft&) = delete;
  RealFft& operator=(const RealFft&) = delete;

  double* input() { return in_; }
  void execute() { fftw_execute(plan_); }
  double power(int k) const { return out_[k][0] * out_[k][0] + out_[k][1] * out_[k][1]; }

 private:
  int n_;
  double* in_;
  fftw_complex* out_;
  fftw_plan plan_;
};

void max_normalize(ChromaVector& v) {
  double peak = *std::max_element(v.begin(), v.end());
  if (peak > 0.0)
    for (double& x : v) x /= peak;
}

}  // namespace

int pitch_class_of_frequency(double hz) {
  long midi = std::lround(12.0 * std::log2(hz / 440.0) + 69.0);
  return static_cast<int>(((midi % 12) + 12) % 12);
}

Chromagram chroma_from_audio(const AudioClip& clip, const AudioChromaOptions& options) {
  const int n = options.frame_len;
  const int hop = options.hop;
  if (n <= 0 || hop <= 0) throw InputError("frame length and hop must be positive");
  if (clip.samples.size() < static_cast<std::size_t>(n))
    throw InputError("clip is shorter than one analysis frame");

  std::vector<double> window(n);
  for (int i = 0; i < n; ++i) window[i] = 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * i / n);

  // bin -> pitch class, -1 outside the analysed band
  std::vector<int> bin_pc(n / 2 + 1, -1);
  for (int k = 1; k <= n / 2; ++k) {
    double f = static_cast<double>(k) * clip.sample_rate / n;
    if (f >= options.min_hz && f <= options.max_hz) bin_pc[k] = pitch_class_of_frequency(f);
  }

  const std::size_t frames = 1 + (clip.samples.size() - n) / hop;
  Chromagram out;
  out.hop_s = static_cast<double>(hop) / clip.sample_rate;
  out.origin = ChromaOrigin::Audio;
  out.frames.resize(frames);

  RealFft fft(n);
  for (std::size_t f = 0; f < frames; ++f) {
    const double* src = clip.samples.data() + f * hop;
    double* in = fft.input();
    for (int i = 0; i < n; ++i) in[i] = src[i] * window[i];
    fft.execute();
    ChromaVector col{};
    for (int k = 1; k <= n / 2; ++k)
      if (bin_pc[k] >= 0) col[bin_pc[k]] += fft.power(k);
    max_normalize(col);
    out.frames[f] = col;
  }
  return out;
}

Chromagram chroma_from_score(const Score& score, double tempo_bpm, double hop_s) {
  if (tempo_bpm <= 0.0) throw InputError("tempo must be positive");
  if (hop_s <= 0.0) throw InputError("hop must be positive");
  if (score.event_count() == 0) throw InputError("cannot render an empty score");

  const double sec_per_beat = 60.0 / tempo_bpm;
  const double total_s = to_double(score.end_beats()) * sec_per_beat;
  constexpr double eps = 1e-9;
  const auto frames = static_cast<std::size_t>(std::max(1.0, std::ceil(total_s / hop_s - eps)));

  Chromagram out;
  out.hop_s = hop_s;
  out.origin = ChromaOrigin::Symbolic;
  out.frames.assign(frames, ChromaVector{});

  for (const auto& part : score.parts)
    for (const auto& voice : part.voices)
      for (const auto& e : voice.events) {
        if (e.is_rest()) continue;
        const double on = to_double(e.position.abs_beats) * sec_per_beat;
        const double off = to_double(e.end_beats()) * sec_per_beat;
        const double w = e.effective_velocity() / 127.0;
        const int pc = *e.midi_pitch() % 12;
        // frame f samples the score at time f * hop_s
        auto first = static_cast<std::size_t>(std::max(0.0, std::ceil((on - eps) / hop_s)));
        for (std::size_t f = first; f < frames; ++f) {
          double t = static_cast<double>(f) * hop_s;
          if (t + eps < on) continue;
          if (t + eps >= off) break;
          out.frames[f][pc] += w;
          out.frames[f][(pc + 7) % 12] += w / 2.0;
        }
      }
  for (auto& col : out.frames) max_normalize(col);
  return out;
}

}  // namespace hamse
