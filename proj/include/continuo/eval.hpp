#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "continuo/features.hpp"
#include "continuo/svm.hpp"
#include "continuo/types.hpp"

namespace continuo {

/// Token-extraction settings shared by every evaluation entry point.
struct ExtractOptions {
  double window_ms = 35.0;
  bool keep_duplicates = false;
};

/// Stratified index partition of a sample set.
struct FoldPlan {
  std::vector<std::vector<std::size_t>> folds;
  std::uint64_t seed = 0;
  std::vector<std::string> warnings;
};

/// Shuffles indices (Fisher-Yates over mt19937_64, so plans do not drift
/// across standard libraries), then deals each class round-robin into the
/// folds, each class starting where the previous one stopped. Per-class
/// fold counts differ by at most 1; classes with fewer samples than folds
/// are spread with a warning. Throws std::invalid_argument when k < 2 or
/// k exceeds the sample count.
FoldPlan stratified_kfold(std::span<const std::string> labels, int k,
                          std::uint64_t seed);

/// corpus: one vocabulary over every in-scope performance. per_fold: the
/// vocabulary is rebuilt from each round's training rows only.
enum class VocabMode { corpus, per_fold };

struct EvalOptions {
  KernelSpec kernel;
  double C = 1.0;
  int folds = 5;
  std::uint64_t seed = 0;
  MulticlassScheme scheme = MulticlassScheme::ovo;
  VocabMode vocab_mode = VocabMode::corpus;
  TrainOptions train;
};

struct FoldOutcome {
  std::vector<std::size_t> test_indices;
  std::vector<std::string> predicted;  // parallel to test_indices
  double accuracy = 0.0;
};

/// Mean-over-folds accuracy plus the pooled confusion matrix
/// (row = true class, column = predicted, sorted class order).
struct CvResult {
  double accuracy = 0.0;
  std::vector<FoldOutcome> folds;
  std::vector<std::string> classes;
  std::vector<std::vector<long>> confusion;
};

/// Runs the plan's folds against matrix rows as-is; the vocabulary is
/// whatever the matrix was built with. Throws std::invalid_argument when
/// the plan does not cover the rows exactly.
CvResult cross_validate(const FeatureMatrix& matrix, const FoldPlan& plan,
                        const EvalOptions& options);

/// Same protocol from raw profiles, honoring options.vocab_mode.
CvResult cross_validate(std::span<const GriffProfile> profiles, const FoldPlan& plan,
                        const EvalOptions& options);

/// Per-performance profiles of one representation in deterministic key
/// order, optionally restricted to one score.
struct CorpusSlice {
  std::vector<PerformanceKey> keys;
  std::vector<std::string> labels;  // player per row
  std::vector<GriffProfile> profiles;
  Representation repr;
};

CorpusSlice tokenize_corpus(const Dataset& dataset, const Representation& repr,
                            const ExtractOptions& extract,
                            const std::optional<std::string>& score = std::nullopt);

struct PlayerRun {
  PerformanceKey test;
  std::string predicted;
  bool correct = false;
};

struct PlayerFocusedResult {
  std::string player;
  std::vector<PlayerRun> runs;
  double accuracy = 0.0;  // correct runs / runs
};

/// Leave-one-out over the target player's performances within the scope
/// (one score, or the whole dataset when score is empty): each run holds
/// one of them out, trains on every other in-scope performance, and
/// predicts the held-out player. Throws DataError when the player has no
/// in-scope performance.
PlayerFocusedResult player_focused(const Dataset& dataset, const std::string& player,
                                   const std::optional<std::string>& score,
                                   const Representation& repr,
                                   const ExtractOptions& extract,
                                   const EvalOptions& options);

struct SegmentResult {
  int start = 0;   // score ordinal of the first note
  int length = 0;  // consecutive score notes
  double accuracy = 0.0;
};

/// Sliding windows with stride 1 over one score's ordinals: for every
/// length L and start, a stratified k-fold CV over griff BOWs restricted
/// to ordinals [start, start+L) of every performance of the score.
struct SegmentScanResult {
  std::string score;
  std::vector<int> lengths;
  std::vector<SegmentResult> segments;
  /// length -> per-ordinal unweighted mean over segments containing it
  std::map<int, std::vector<double>> note_means;
  std::vector<double> pooled_note_means;  // over segments of every length
  std::vector<long> histogram;            // segment accuracies binned over [0,1]
  int histogram_bins = 20;
  double skew = 0.0;  // g1 of the pooled segment accuracies
};

SegmentScanResult segment_scan(const Dataset& dataset, const std::string& score,
                               std::span<const int> lengths,
                               const ExtractOptions& extract,
                               const EvalOptions& options);

/// Griff-type usage at one score note across all its performances.
struct NoteStats {
  std::string score;
  std::string note_id;
  int ordinal = 0;
  std::string pitch_name;
  long occurrences = 0;  // non-excluded griff occurrences
  long types = 0;        // distinct tokens
  double mean_usage = 0.0;  // occurrences / types; 0 with no occurrences
  std::optional<double> mean_accuracy;  // attached by the caller
};

NoteStats note_stats(const Dataset& dataset, const std::string& score,
                     const std::string& note_id, const ExtractOptions& extract,
                     std::optional<double> mean_accuracy = std::nullopt);

/// Count per (griff token, player) at one score note.
struct DistributionTable {
  std::string score;
  std::string note_id;
  std::vector<std::string> players;  // sorted
  std::vector<GriffToken> tokens;    // sorted
  std::vector<std::vector<long>> counts;  // tokens x players
};

DistributionTable griff_distribution(const Dataset& dataset, const std::string& score,
                                     const std::string& note_id,
                                     const ExtractOptions& extract);

/// Sample skewness g1 = m3 / m2^(3/2); 0 for fewer than 2 values or zero
/// variance.
double skewness(std::span<const double> values);

}  // namespace continuo
