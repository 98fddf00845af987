#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "continuo/types.hpp"

namespace continuo {

struct MidiParseResult {
  /// Sorted by onset then pitch; note ids assigned as "p<index>" in that
  /// order, so identical files always produce identical ids.
  std::vector<PerformanceNote> notes;
  /// Recoverable oddities: note-on without note-off (closed at end of
  /// track), orphan note-off, zero-length notes.
  std::vector<std::string> warnings;
};

/// Parses a Standard MIDI File, format 0 or 1. Tick times are converted to
/// milliseconds honoring every tempo meta event (piecewise over tempo
/// segments). Throws ParseError with the byte offset on malformed input.
MidiParseResult parse_midi(std::span<const std::uint8_t> bytes);

}  // namespace continuo
