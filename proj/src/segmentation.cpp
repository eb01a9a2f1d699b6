#include "hamse/segmentation.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <fmt/format.h>

#include "hamse/alignment.h"
#include "hamse/error.h"

namespace hamse {

SimilarityMatrix self_similarity(const Chromagram& chroma) {
  const std::size_t f = chroma.size();
  if (f < 2) throw InputError("self-similarity needs at least two frames");
  SimilarityMatrix s{f, std::vector<double>(f * f, 0.0)};
  for (std::size_t i = 0; i < f; ++i) {
    s.at(i, i) = 1.0;
    for (std::size_t j = i + 1; j < f; ++j) {
      double v = chroma_similarity(chroma.frames[i], chroma.frames[j]);
      s.at(i, j) = v;
      s.at(j, i) = v;
    }
  }
  return s;
}

std::vector<double> novelty_curve(const SimilarityMatrix& s, int kernel_half) {
  const auto f = static_cast<long>(s.size);
  const long half = kernel_half;
  if (half < 1) throw InputError("kernel half-width must be positive");
  if (f <= 2 * half) throw InputError("novelty needs more than 2 * kernel_half frames");

  // taper over offsets 0.5, 1.5, ... from the centre line
  const double sigma = 0.5 * static_cast<double>(half);
  std::vector<double> g(half);
  for (long a = 0; a < half; ++a) {
    double d = (static_cast<double>(a) + 0.5) / sigma;
    g[a] = std::exp(-0.5 * d * d);
  }

  std::vector<double> out(f, 0.0);
  for (long i = half; i <= f - half; ++i) {
    double past = 0, future = 0, cross_pf = 0, cross_fp = 0;
    for (long a = 0; a < half; ++a)
      for (long b = 0; b < half; ++b) {
        double w = g[a] * g[b];
        past += w * s.at(i - 1 - a, i - 1 - b);
        future += w * s.at(i + a, i + b);
        cross_pf += w * s.at(i - 1 - a, i + b);
        cross_fp += w * s.at(i + a, i - 1 - b);
      }
    out[i] = std::max(0.0, (past + future) - (cross_pf + cross_fp));
  }
  return out;
}

std::vector<double> pick_boundaries(const std::vector<double>& novelty, double hop_s, std::optional<double> end_s,
                                    const SegmenterOptions& options) {
  const double end = end_s.value_or(static_cast<double>(novelty.size()) * hop_s);
  std::vector<double> out{0.0};
  if (novelty.size() >= 3) {
    const double n = static_cast<double>(novelty.size());
    const double mean = std::accumulate(novelty.begin(), novelty.end(), 0.0) / n;
    double var = 0.0;
    for (double v : novelty) var += (v - mean) * (v - mean);
    const double threshold = mean + options.threshold_sigmas * std::sqrt(var / n);

    std::vector<std::size_t> peaks;
    for (std::size_t i = 1; i + 1 < novelty.size(); ++i)
      if (novelty[i] > threshold && novelty[i] > novelty[i - 1] && novelty[i] >= novelty[i + 1]) peaks.push_back(i);
    std::stable_sort(peaks.begin(), peaks.end(),
                     [&](std::size_t a, std::size_t b) { return novelty[a] > novelty[b]; });
    std::vector<std::size_t> kept;
    for (std::size_t p : peaks) {
      bool clear = std::all_of(kept.begin(), kept.end(), [&](std::size_t k) {
        return static_cast<long>(std::max(p, k) - std::min(p, k)) >= options.min_distance_frames;
      });
      if (clear) kept.push_back(p);
    }
    std::sort(kept.begin(), kept.end());
    for (std::size_t k : kept) {
      double t = static_cast<double>(k) * hop_s;
      if (t > 0.0 && t < end) out.push_back(t);
    }
  }
  out.push_back(end);
  return out;
}

namespace {

std::string cluster_name(std::size_t index) {
  std::string name;
  ++index;
  while (index > 0) {
    --index;
    name.insert(name.begin(), static_cast<char>('A' + index % 26));
    index /= 26;
  }
  return name;
}

std::size_t find_root(std::vector<std::size_t>& parent, std::size_t x) {
  while (parent[x] != x) x = parent[x] = parent[parent[x]];
  return x;
}

}  // namespace

std::vector<Segment> label_segments(const Chromagram& chroma, const std::vector<double>& boundaries,
                                    const SegmenterOptions& options) {
  if (boundaries.size() < 2) throw InputError("need at least a start and an end boundary");
  if (!std::is_sorted(boundaries.begin(), boundaries.end())) throw InputError("boundaries must be sorted");
  if (chroma.size() == 0 || chroma.hop_s <= 0.0) throw InputError("empty chromagram");

  const std::size_t count = boundaries.size() - 1;
  const long frames = static_cast<long>(chroma.size());
  std::vector<ChromaVector> means(count);
  for (std::size_t k = 0; k < count; ++k) {
    long a = std::clamp(std::lround(boundaries[k] / chroma.hop_s), 0L, frames - 1);
    long b = std::clamp(std::lround(boundaries[k + 1] / chroma.hop_s), a + 1, frames);
    ChromaVector m{};
    for (long f = a; f < b; ++f)
      for (int c = 0; c < 12; ++c) m[c] += chroma.frames[f][c];
    for (double& v : m) v /= static_cast<double>(b - a);
    means[k] = m;
  }

  std::vector<std::size_t> parent(count);
  std::iota(parent.begin(), parent.end(), 0);
  for (std::size_t i = 0; i < count; ++i)
    for (std::size_t j = i + 1; j < count; ++j)
      if (chroma_distance(means[i], means[j]) < options.merge_distance)
        parent[find_root(parent, j)] = find_root(parent, i);

  std::vector<long> name_of(count, -1);
  std::size_t next = 0;
  std::vector<Segment> out;
  for (std::size_t k = 0; k < count; ++k) {
    std::size_t root = find_root(parent, k);
    if (name_of[root] < 0) name_of[root] = static_cast<long>(next++);
    out.push_back({boundaries[k], boundaries[k + 1], cluster_name(static_cast<std::size_t>(name_of[root]))});
  }
  return out;
}

std::vector<Segment> segment_structure(const Chromagram& chroma, double duration_s, const SegmenterOptions& options) {
  if (chroma.size() <= static_cast<std::size_t>(2 * options.kernel_half))
    return label_segments(chroma, {0.0, duration_s}, options);
  auto novelty = novelty_curve(self_similarity(chroma), options.kernel_half);
  return label_segments(chroma, pick_boundaries(novelty, chroma.hop_s, duration_s, options), options);
}

std::string segments_csv(const std::vector<Segment>& segments) {
  std::string out = "start_s,end_s,label\n";
  for (const auto& s : segments) out += fmt::format("{:.6f},{:.6f},{}\n", s.start_s, s.end_s, s.label);
  return out;
}

std::string form_string(const std::vector<Segment>& segments) {
  std::string out;
  for (const auto& s : segments) {
    if (!out.empty()) out += ' ';
    out += s.label;
  }
  return out;
}

}  // namespace hamse
