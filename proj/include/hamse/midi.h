#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "hamse/score.h"

namespace hamse {

struct SmfDiagnostics {
  int format = 0;
  int declared_tracks = 0;
  /// Note-ons still open at end of track, closed at the track's final tick.
  bool unclosed_notes = false;
  std::vector<std::string> warnings;
};

/// Decodes a Standard MIDI File (format 0 or 1).
///
/// Each (track, channel) pair that carries notes becomes one Part. Program
/// Change sets the part's program (default 0). Note-on with velocity 0 is a
/// note-off. Overlapping notes are split into voices by giving each note to
/// the first voice that is free at its onset; gaps inside a voice are filled
/// with rests. Tempo (0x51), time signature (0x58) and track name (0x03)
/// meta events are honoured, every other meta event is skipped.
///
/// Throws BinaryParseError with the byte offset of truncated or malformed data.
Score parse_smf(std::span<const std::uint8_t> bytes, SmfDiagnostics* diagnostics = nullptr);

/// Minimal writer used by tests and the CLI: format 1, one track per part,
/// voices merged onto the part's channel, rests omitted.
std::vector<std::uint8_t> write_smf(const Score& score);

}  // namespace hamse
