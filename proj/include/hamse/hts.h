#pragma once

#include <string>
#include <string_view>

#include "hamse/score.h"

namespace hamse {

// HaMSE Text Score: one directive or event per line.
//
//   #score tpq=<int> title="<text>" [work=<id>] [tempo=<bpm>]
//   #part <name> <midi-program> <staff>
//   #section <part> <num>/<den> <clef> startbar=<int>
//   <bar>:<beat> <duration> <pitch|R> [vel=<0-127>] [voice=<int>] [dyn=<text>] [part=<name>]
//
// Events without part= belong to the most recently declared part. Lines that
// are blank or start with "//" are ignored. A part with no #section line gets
// 4/4 treble from bar 1.

/// Throws ParseError naming the offending line.
Score parse_hts(std::string_view text);

/// parse_hts(write_hts(s)) == s for every valid score.
std::string write_hts(const Score& score);

}  // namespace hamse
