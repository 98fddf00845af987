#pragma once

#include <string>
#include <vector>

#include "continuo/types.hpp"

namespace continuo {

/// Ordered interval vectors relative to the aligned bass note. Canonical
/// form keeps each vector's intervals sorted ascending with duplicates
/// collapsed; no vectors at all is the designated Empty griff (a deletion).
struct Griff {
  std::vector<std::vector<int>> vectors;

  bool empty() const { return vectors.empty(); }
  friend bool operator==(const Griff&, const Griff&) = default;
  friend auto operator<=>(const Griff&, const Griff&) = default;
};

/// Canonical string encoding of a griff or griff n-gram:
///   interval := '-'? digits
///   vector   := interval ('_' interval)*
///   griff    := vector ('|' vector)*
///   ngram    := griff ('#' griff)*
/// The Empty griff encodes as "" and never appears inside an n-gram.
using GriffToken = std::string;

/// Per score-note griffs of one performance, in score order.
struct GriffSequence {
  std::vector<Griff> griffs;  // length = continuo-line length
  double window_ms = 0.0;
  PerformanceKey source;

  std::vector<GriffToken> tokens() const;
};

/// Groups aligned performance notes by score-note ordinal. Insertions are
/// excluded; deletions yield empty groups. Each group is sorted by onset
/// then pitch.
std::vector<std::vector<PerformanceNote>> group_by_score_note(
    const std::vector<PerformanceNote>& notes, const Alignment& alignment,
    const std::vector<ScoreNote>& score);

/// Greedy anchor windowing: the first ungrouped note anchors a group, every
/// note with onset < anchor onset + window_ms joins it, repeat. Input must
/// be sorted by onset (ties by pitch). Throws std::invalid_argument when
/// window_ms <= 0.
std::vector<std::vector<PerformanceNote>> segment_windows(
    const std::vector<PerformanceNote>& notes, double window_ms);

/// Turns windowed groups into bass-relative intervals. Duplicate intervals
/// within one vector collapse unless keep_duplicates is set; intervals are
/// sorted ascending per vector. Empty input gives the Empty griff.
Griff to_griff(const std::vector<std::vector<PerformanceNote>>& groups, int bass_pitch,
               bool keep_duplicates = false);

GriffToken encode(const Griff& griff);

/// Inverse of encode on single griffs; "" gives the Empty griff. Throws
/// ParseError when the text does not match the grammar.
Griff parse_token(const GriffToken& token);

/// group_by_score_note -> segment_windows -> to_griff, in score order.
GriffSequence extract_griffs(const Performance& performance,
                             const std::vector<ScoreNote>& score, double window_ms,
                             bool keep_duplicates = false);

/// Sliding window of n consecutive non-Empty griffs joined by '#'. Empty
/// griffs break adjacency; n = 1 returns the non-Empty tokens. Throws
/// std::invalid_argument when n < 1.
std::vector<GriffToken> make_ngrams(const GriffSequence& seq, int n);

/// Structureless representation: one decimal token per aligned performance
/// note, pitch minus aligned score pitch. Insertions are excluded.
std::vector<GriffToken> intervals_repr(const Performance& performance,
                                       const std::vector<ScoreNote>& score);

}  // namespace continuo
