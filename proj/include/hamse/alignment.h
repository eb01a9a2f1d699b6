#pragma once

#include <string>
#include <utility>
#include <vector>

#include "hamse/audio.h"
#include "hamse/score.h"

namespace hamse {

/// Row-major rows x cols matrix of frame distances.
struct CostMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;

  CostMatrix() = default;
  CostMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}
  double& at(std::size_t i, std::size_t j) { return data[i * cols + j]; }
  double at(std::size_t i, std::size_t j) const { return data[i * cols + j]; }
};

/// Cosine similarity; two zero columns are identical (1), a zero column is
/// orthogonal to any non-zero column (0). Bit-identical columns give exactly 1.
double chroma_similarity(const ChromaVector& a, const ChromaVector& b);

/// 1 - chroma_similarity, clamped to [0, 2].
double chroma_distance(const ChromaVector& a, const ChromaVector& b);

CostMatrix chroma_cost_matrix(const Chromagram& rows, const Chromagram& cols);

using PathPoint = std::pair<std::size_t, std::size_t>;

struct WarpPath {
  std::vector<PathPoint> points;  // (row, col)
  double total_cost = 0.0;
};

/// Global-minimum monotone path from (0,0) to (rows-1, cols-1) over unweighted
/// steps (1,0), (0,1), (1,1). Throws InputError for an empty matrix.
WarpPath dtw(const CostMatrix& cost);

/// Endpoints fixed, coordinates non-decreasing, steps from the allowed set.
bool is_valid_warp_path(const std::vector<PathPoint>& path, std::size_t rows, std::size_t cols);

struct AlignmentAnchor {
  double abs_beats = 0.0;
  double time_s = 0.0;
};

/// Score beat time <-> recording seconds (a tl:TimeLineMap).
struct AlignmentMap {
  std::vector<PathPoint> path;  // (audio_frame, symbolic_frame)
  std::vector<AlignmentAnchor> anchors;
  double total_cost = 0.0;
  double audio_hop_s = 0.0;
  double symbolic_hop_s = 0.0;
  double tempo_bpm = 120.0;
  std::string recording_ref;
};

/// DTW between an audio chromagram and a symbolic rendering at `tempo_bpm`.
/// Anchors keep the first path point of every strictly increasing step in
/// both coordinates, plus a terminal anchor at the end of both frame grids.
AlignmentMap align(const Chromagram& audio, const Chromagram& symbolic, double tempo_bpm,
                   std::string recording_ref = {});

/// Piecewise-linear interpolation over the anchors, clamped to the ends.
double beats_to_seconds(const AlignmentMap& map, double abs_beats);

struct BarQuery {
  int start_bar = 1;
  Rational start_beat;
  int end_bar = 2;
  Rational end_beat;
};

struct TimeInterval {
  double start_s = 0.0;
  double end_s = 0.0;
  std::string recording_ref;
};

/// Positions are read in the first part's bars. A query ending at or after
/// the score end maps to the last anchor. Throws RangeError outside the score.
TimeInterval map_beats_to_seconds(const AlignmentMap& map, const Score& score, const BarQuery& query);

/// "abs_beats,time_s" header plus one row per anchor, 6 decimals.
std::string anchors_csv(const AlignmentMap& map);

}  // namespace hamse
