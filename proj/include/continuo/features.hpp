#pragma once

#include <cstddef>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "continuo/griff.hpp"
#include "continuo/types.hpp"

namespace continuo {

/// Which token stream a profile was counted from. n = 1 is the plain griff
/// representation; n >= 2 are griff n-grams.
struct Representation {
  enum class Kind { intervals, griff_ngram };
  Kind kind = Kind::griff_ngram;
  int n = 1;

  static Representation intervals() { return {Kind::intervals, 1}; }
  static Representation griff(int n = 1) { return {Kind::griff_ngram, n}; }

  /// "intervals", "griff", "2gram", "3gram", ...
  std::string tag() const;
  static Representation from_tag(const std::string& tag);

  friend bool operator==(const Representation&, const Representation&) = default;
};

/// The Empty token is always excluded; the bass-only token "0" is excluded
/// for griff representations but retained for intervals (only whole-griff
/// bass-only realizations carry no pitch content).
bool excluded_token(const GriffToken& token, const Representation& repr);

/// Token multiplicities of one performance under one representation.
struct GriffProfile {
  std::map<GriffToken, long> counts;
  PerformanceKey source;
  Representation repr;

  long total() const;
};

/// Distinct tokens over a set of profiles, sorted lexicographically.
struct Vocabulary {
  std::vector<GriffToken> tokens;
  std::unordered_map<std::string, std::size_t> index;
  Representation repr;

  std::size_t size() const { return tokens.size(); }
  std::optional<std::size_t> find(const GriffToken& token) const;
};

/// Raw BOW counts, one row per performance over a shared vocabulary.
struct FeatureMatrix {
  std::vector<PerformanceKey> keys;  // row sources
  std::vector<std::string> labels;   // player ids
  Vocabulary vocab;
  std::vector<double> values;        // row-major

  std::size_t rows() const { return keys.size(); }
  std::size_t cols() const { return vocab.size(); }
  std::span<const double> row(std::size_t i) const {
    return {values.data() + i * cols(), cols()};
  }
};

/// Counts tokens into a profile, applying the exclusion rule.
GriffProfile profile(const std::vector<GriffToken>& tokens, Representation repr,
                     PerformanceKey source);

/// Convenience for griff representations: n-grams the sequence first.
GriffProfile profile(const GriffSequence& seq, Representation repr);

/// Union of profile tokens, sorted lexicographically. All profiles must
/// share a representation; throws std::invalid_argument otherwise.
Vocabulary build_vocabulary(std::span<const GriffProfile> profiles);

/// Tokens absent from the vocabulary are dropped (unseen test tokens).
FeatureMatrix bow_matrix(std::span<const GriffProfile> profiles, const Vocabulary& vocab);

void write_vocabulary(const Vocabulary& vocab, std::ostream& out);  // one token per line
void write_matrix_csv(const FeatureMatrix& matrix, std::ostream& out);
/// {"rows", "cols", "tokens", "entries": [[row, col, count], ...]}
std::string matrix_triplets_json(const FeatureMatrix& matrix);

}  // namespace continuo
