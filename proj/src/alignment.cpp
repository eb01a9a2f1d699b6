#include "hamse/alignment.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "hamse/error.h"

namespace hamse {

double chroma_similarity(const ChromaVector& a, const ChromaVector& b) {
  if (a == b) return 1.0;
  double dot = 0.0, na = 0.0, nb = 0.0;
  for (int k = 0; k < 12; ++k) {
    dot += a[k] * b[k];
    na += a[k] * a[k];
    nb += b[k] * b[k];
  }
  if (na == 0.0 && nb == 0.0) return 1.0;
  if (na == 0.0 || nb == 0.0) return 0.0;
  return std::clamp(dot / std::sqrt(na * nb), -1.0, 1.0);
}

double chroma_distance(const ChromaVector& a, const ChromaVector& b) {
  return std::clamp(1.0 - chroma_similarity(a, b), 0.0, 2.0);
}

CostMatrix chroma_cost_matrix(const Chromagram& rows, const Chromagram& cols) {
  CostMatrix c(rows.size(), cols.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j) c.at(i, j) = chroma_distance(rows.frames[i], cols.frames[j]);
  return c;
}

WarpPath dtw(const CostMatrix& cost) {
  const std::size_t n = cost.rows, m = cost.cols;
  if (n == 0 || m == 0) throw InputError("DTW needs two non-empty sequences");
  constexpr double inf = std::numeric_limits<double>::infinity();
  CostMatrix acc(n, m);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      double best = inf;
      if (i == 0 && j == 0) best = 0.0;
      if (i > 0 && j > 0) best = std::min(best, acc.at(i - 1, j - 1));
      if (i > 0) best = std::min(best, acc.at(i - 1, j));
      if (j > 0) best = std::min(best, acc.at(i, j - 1));
      acc.at(i, j) = best + cost.at(i, j);
    }

  WarpPath out;
  out.total_cost = acc.at(n - 1, m - 1);
  std::size_t i = n - 1, j = m - 1;
  out.points.emplace_back(i, j);
  while (i > 0 || j > 0) {
    // diagonal first, then row step, then column step
    if (i > 0 && j > 0) {
      double d = acc.at(i - 1, j - 1), up = acc.at(i - 1, j), left = acc.at(i, j - 1);
      if (d <= up && d <= left) {
        --i, --j;
      } else if (up <= left) {
        --i;
      } else {
        --j;
      }
    } else if (i > 0) {
      --i;
    } else {
      --j;
    }
    out.points.emplace_back(i, j);
  }
  std::reverse(out.points.begin(), out.points.end());
  return out;
}

bool is_valid_warp_path(const std::vector<PathPoint>& path, std::size_t rows, std::size_t cols) {
  if (path.empty() || rows == 0 || cols == 0) return false;
  if (path.front() != PathPoint{0, 0} || path.back() != PathPoint{rows - 1, cols - 1}) return false;
  for (std::size_t k = 1; k < path.size(); ++k) {
    auto di = path[k].first - path[k - 1].first;
    auto dj = path[k].second - path[k - 1].second;
    if (path[k].first < path[k - 1].first || path[k].second < path[k - 1].second) return false;
    if (di > 1 || dj > 1 || (di == 0 && dj == 0)) return false;
  }
  return true;
}

AlignmentMap align(const Chromagram& audio, const Chromagram& symbolic, double tempo_bpm, std::string recording_ref) {
  if (tempo_bpm <= 0.0) throw InputError("tempo must be positive");
  WarpPath warp = dtw(chroma_cost_matrix(audio, symbolic));
  AlignmentMap map;
  map.path = std::move(warp.points);
  map.total_cost = warp.total_cost;
  map.audio_hop_s = audio.hop_s;
  map.symbolic_hop_s = symbolic.hop_s;
  map.tempo_bpm = tempo_bpm;
  map.recording_ref = std::move(recording_ref);

  const double beats_per_frame = symbolic.hop_s * tempo_bpm / 60.0;
  for (const auto& [ai, si] : map.path) {
    AlignmentAnchor a{static_cast<double>(si) * beats_per_frame, static_cast<double>(ai) * audio.hop_s};
    if (map.anchors.empty() || (a.abs_beats > map.anchors.back().abs_beats && a.time_s > map.anchors.back().time_s))
      map.anchors.push_back(a);
  }
  map.anchors.push_back({static_cast<double>(symbolic.size()) * beats_per_frame,
                         static_cast<double>(audio.size()) * audio.hop_s});
  return map;
}

double beats_to_seconds(const AlignmentMap& map, double abs_beats) {
  const auto& a = map.anchors;
  if (a.empty()) throw InputError("alignment has no anchors");
  if (abs_beats <= a.front().abs_beats) return a.front().time_s;
  if (abs_beats >= a.back().abs_beats) return a.back().time_s;
  auto hi = std::lower_bound(a.begin(), a.end(), abs_beats,
                             [](const AlignmentAnchor& x, double b) { return x.abs_beats < b; });
  auto lo = hi - 1;
  double t = (abs_beats - lo->abs_beats) / (hi->abs_beats - lo->abs_beats);
  return lo->time_s + t * (hi->time_s - lo->time_s);
}

TimeInterval map_beats_to_seconds(const AlignmentMap& map, const Score& score, const BarQuery& query) {
  if (score.parts.empty()) throw InputError("score has no parts");
  const auto& sections = score.parts.front().sections;
  Rational start = abs_beats_of(query.start_bar, query.start_beat, sections);
  Rational end = abs_beats_of(query.end_bar, query.end_beat, sections);
  Rational score_end = score.end_beats();
  Position last = locate(score_end, sections);
  Rational bar_end = last.beat == Rational(0) ? score_end : abs_beats_of(last.bar + 1, Rational(0), sections);
  if (end < start) throw RangeError("query ends before it starts");
  if (start >= score_end || end > bar_end) throw RangeError("query lies outside the score");

  TimeInterval out;
  out.recording_ref = map.recording_ref;
  out.start_s = beats_to_seconds(map, to_double(start));
  out.end_s = end >= score_end ? map.anchors.back().time_s : beats_to_seconds(map, to_double(end));
  return out;
}

std::string anchors_csv(const AlignmentMap& map) {
  std::string out = "abs_beats,time_s\n";
  for (const auto& a : map.anchors) out += fmt::format("{:.6f},{:.6f}\n", a.abs_beats, a.time_s);
  return out;
}

}  // namespace hamse
