#include "continuo/griff.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>

#include "continuo/errors.hpp"

namespace continuo {

std::vector<GriffToken> GriffSequence::tokens() const {
  std::vector<GriffToken> out;
  out.reserve(griffs.size());
  for (const Griff& g : griffs) out.push_back(encode(g));
  return out;
}

std::vector<std::vector<PerformanceNote>> group_by_score_note(
    const std::vector<PerformanceNote>& notes, const Alignment& alignment,
    const std::vector<ScoreNote>& score) {
  std::unordered_map<std::string, int> ordinal_of;
  for (const ScoreNote& n : score) ordinal_of.emplace(n.id, n.ordinal);
  std::unordered_map<std::string, const PerformanceNote*> note_of;
  for (const PerformanceNote& n : notes) note_of.emplace(n.note_id, &n);

  std::vector<std::vector<PerformanceNote>> groups(score.size());
  for (const auto& [pid, sid] : alignment.pairs) {
    auto ord = ordinal_of.find(sid);
    if (ord == ordinal_of.end()) throw DataError("unknown score note " + sid);
    auto note = note_of.find(pid);
    if (note == note_of.end()) throw DataError("unknown performance note " + pid);
    groups[ord->second].push_back(*note->second);
  }
  for (auto& group : groups)
    std::sort(group.begin(), group.end(),
              [](const PerformanceNote& a, const PerformanceNote& b) {
                return std::tie(a.onset_ms, a.pitch) < std::tie(b.onset_ms, b.pitch);
              });
  return groups;
}

std::vector<std::vector<PerformanceNote>> segment_windows(
    const std::vector<PerformanceNote>& notes, double window_ms) {
  if (window_ms <= 0.0)
    throw std::invalid_argument("segment_windows: window_ms must be positive");
  std::vector<std::vector<PerformanceNote>> groups;
  std::size_t i = 0;
  while (i < notes.size()) {
    const double anchor = notes[i].onset_ms;
    std::vector<PerformanceNote> group;
    while (i < notes.size() && notes[i].onset_ms < anchor + window_ms)
      group.push_back(notes[i++]);
    groups.push_back(std::move(group));
  }
  return groups;
}

Griff to_griff(const std::vector<std::vector<PerformanceNote>>& groups, int bass_pitch,
               bool keep_duplicates) {
  Griff griff;
  for (const auto& group : groups) {
    if (group.empty()) continue;
    std::vector<int> intervals;
    intervals.reserve(group.size());
    for (const PerformanceNote& n : group) intervals.push_back(n.pitch - bass_pitch);
    std::sort(intervals.begin(), intervals.end());
    if (!keep_duplicates)
      intervals.erase(std::unique(intervals.begin(), intervals.end()), intervals.end());
    griff.vectors.push_back(std::move(intervals));
  }
  return griff;
}

GriffToken encode(const Griff& griff) {
  GriffToken out;
  for (std::size_t v = 0; v < griff.vectors.size(); ++v) {
    if (v > 0) out += '|';
    const auto& vec = griff.vectors[v];
    for (std::size_t i = 0; i < vec.size(); ++i) {
      if (i > 0) out += '_';
      out += std::to_string(vec[i]);
    }
  }
  return out;
}

Griff parse_token(const GriffToken& token) {
  Griff griff;
  if (token.empty()) return griff;
  std::size_t pos = 0;
  auto fail = [&]() -> void {
    throw ParseError("griff token '" + token + "': bad syntax at offset " +
                     std::to_string(pos));
  };
  std::vector<int> vec;
  auto read_interval = [&]() {
    bool negative = false;
    if (pos < token.size() && token[pos] == '-') {
      negative = true;
      ++pos;
    }
    if (pos >= token.size() || token[pos] < '0' || token[pos] > '9') fail();
    long value = 0;
    while (pos < token.size() && token[pos] >= '0' && token[pos] <= '9') {
      value = value * 10 + (token[pos] - '0');
      if (value > 1 << 20) fail();
      ++pos;
    }
    vec.push_back(static_cast<int>(negative ? -value : value));
  };
  read_interval();
  while (pos < token.size()) {
    const char c = token[pos];
    if (c == '_') {
      ++pos;
      read_interval();
    } else if (c == '|') {
      ++pos;
      griff.vectors.push_back(std::move(vec));
      vec.clear();
      read_interval();
    } else {
      fail();
    }
  }
  griff.vectors.push_back(std::move(vec));
  return griff;
}

GriffSequence extract_griffs(const Performance& performance,
                             const std::vector<ScoreNote>& score, double window_ms,
                             bool keep_duplicates) {
  GriffSequence seq;
  seq.window_ms = window_ms;
  seq.griffs.reserve(score.size());
  const auto grouped = group_by_score_note(performance.notes, performance.alignment, score);
  for (std::size_t ordinal = 0; ordinal < grouped.size(); ++ordinal) {
    const auto windows = segment_windows(grouped[ordinal], window_ms);
    seq.griffs.push_back(to_griff(windows, score[ordinal].pitch, keep_duplicates));
  }
  return seq;
}

std::vector<GriffToken> make_ngrams(const GriffSequence& seq, int n) {
  if (n < 1) throw std::invalid_argument("make_ngrams: n must be >= 1");
  const std::vector<GriffToken> tokens = seq.tokens();
  std::vector<GriffToken> out;
  for (std::size_t start = 0; start + n <= tokens.size(); ++start) {
    GriffToken joined;
    bool ok = true;
    for (int j = 0; j < n; ++j) {
      if (tokens[start + j].empty()) {
        ok = false;  // Empty griffs break adjacency
        break;
      }
      if (j > 0) joined += '#';
      joined += tokens[start + j];
    }
    if (ok) out.push_back(std::move(joined));
  }
  return out;
}

std::vector<GriffToken> intervals_repr(const Performance& performance,
                                       const std::vector<ScoreNote>& score) {
  std::vector<GriffToken> out;
  const auto grouped = group_by_score_note(performance.notes, performance.alignment, score);
  for (std::size_t ordinal = 0; ordinal < grouped.size(); ++ordinal)
    for (const PerformanceNote& n : grouped[ordinal])
      out.push_back(std::to_string(n.pitch - score[ordinal].pitch));
  return out;
}

}  // namespace continuo
