#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hamse/audio.h"

namespace hamse {

/// Dense symmetric F x F matrix.
struct SimilarityMatrix {
  std::size_t size = 0;
  std::vector<double> data;

  double at(std::size_t i, std::size_t j) const { return data[i * size + j]; }
  double& at(std::size_t i, std::size_t j) { return data[i * size + j]; }
};

/// Pairwise cosine similarity of chroma columns (zero-column convention of
/// chroma_similarity). Requires at least two frames.
SimilarityMatrix self_similarity(const Chromagram& chroma);

struct SegmenterOptions {
  int kernel_half = 8;
  double threshold_sigmas = 0.5;
  int min_distance_frames = 8;
  double merge_distance = 0.15;
};

/// Gaussian-tapered checkerboard kernel correlated along the diagonal.
/// Entry i measures contrast between frames [i-L, i) and [i, i+L), so a peak
/// at i marks a boundary in front of frame i. Centres where the kernel does
/// not fit inside the matrix are zero; the output is half-wave rectified.
/// Throws InputError unless F > 2 * kernel_half.
std::vector<double> novelty_curve(const SimilarityMatrix& s, int kernel_half = 8);

/// Boundary times including 0 and the end time. Interior boundaries are local
/// maxima strictly above mean + threshold_sigmas * stddev, at least
/// min_distance_frames apart (the larger peak wins). `end_s` defaults to
/// novelty.size() * hop_s.
std::vector<double> pick_boundaries(const std::vector<double>& novelty, double hop_s,
                                    std::optional<double> end_s = std::nullopt,
                                    const SegmenterOptions& options = {});

struct Segment {
  double start_s = 0.0;
  double end_s = 0.0;
  std::string label;
};

/// Labels segments by single-linkage clustering of their mean chroma vectors
/// (cosine distance below merge_distance joins two segments). Cluster names
/// follow first appearance: A, B, ..., Z, AA, AB, ...
std::vector<Segment> label_segments(const Chromagram& chroma, const std::vector<double>& boundaries,
                                    const SegmenterOptions& options = {});

/// Full pipeline on a recording's chromagram. Segments tile [0, duration_s].
std::vector<Segment> segment_structure(const Chromagram& chroma, double duration_s,
                                       const SegmenterOptions& options = {});

/// "start_s,end_s,label" header plus one row per segment, 6 decimals.
std::string segments_csv(const std::vector<Segment>& segments);

/// Label sequence such as "A B A".
std::string form_string(const std::vector<Segment>& segments);

}  // namespace hamse
