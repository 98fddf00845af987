#pragma once

#include <compare>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace continuo {

/// One played note of a performance. Times are milliseconds from the start
/// of the file. Velocity is parsed and kept but unused by the analysis.
struct PerformanceNote {
  std::string note_id;
  double onset_ms = 0.0;
  double offset_ms = 0.0;
  int pitch = 0;     // MIDI pitch 0-127
  int velocity = 0;  // MIDI velocity 0-127

  friend bool operator==(const PerformanceNote&, const PerformanceNote&) = default;
};

/// One note of the continuo line. Ordinals are consecutive 0..K-1 within a
/// score; ids are free-form (full-score ids may exceed the line length, so
/// ordinals are carried explicitly).
struct ScoreNote {
  std::string id;
  int ordinal = 0;
  int pitch = 0;  // bass MIDI pitch

  friend bool operator==(const ScoreNote&, const ScoreNote&) = default;
};

/// Mapping from performance notes to score notes. A performance note maps to
/// at most one score note; unaligned notes (insertions) are listed
/// separately. Score notes with no aligned performance notes are deletions.
struct Alignment {
  std::vector<std::pair<std::string, std::string>> pairs;  // (perf note id, score note id)
  std::vector<std::string> insertions;                     // perf note ids
};

struct PerformanceKey {
  std::string score;
  std::string player;
  std::string take;

  auto operator<=>(const PerformanceKey&) const = default;
  std::string label() const { return score + "_" + player + "_" + take; }
};

struct Performance {
  std::vector<PerformanceNote> notes;
  Alignment alignment;
};

/// Immutable after load; safe to share across concurrent readers.
struct Dataset {
  std::map<std::string, std::vector<ScoreNote>> scores;
  std::map<PerformanceKey, Performance> performances;
};

/// "D3" for MIDI pitch 50 (C4 = 60). Sharps only; spelled accidentals from
/// the original notation are not recoverable from MIDI pitch.
std::string midi_pitch_name(int pitch);

}  // namespace continuo
