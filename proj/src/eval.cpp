#include "continuo/eval.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <set>
#include <stdexcept>

#include "continuo/errors.hpp"
#include "continuo/griff.hpp"

namespace continuo {

namespace {

std::vector<std::size_t> shuffled_indices(std::size_t n, std::uint64_t seed) {
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::mt19937_64 rng(seed);
  // Fisher-Yates with a modulo draw: std::shuffle's draw sequence is
  // implementation-defined, and fold plans must not drift across standard
  // libraries.
  for (std::size_t i = n; i > 1; --i) std::swap(order[i - 1], order[rng() % i]);
  return order;
}

std::vector<std::string> sorted_classes(std::span<const std::string> labels) {
  const std::set<std::string> distinct(labels.begin(), labels.end());
  return {distinct.begin(), distinct.end()};
}

std::map<std::string, std::size_t> class_index(std::span<const std::string> classes) {
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < classes.size(); ++i) index[classes[i]] = i;
  return index;
}

void check_plan(const FoldPlan& plan, std::size_t rows) {
  std::vector<std::size_t> all;
  for (const auto& fold : plan.folds) all.insert(all.end(), fold.begin(), fold.end());
  std::sort(all.begin(), all.end());
  bool covers = all.size() == rows;
  for (std::size_t i = 0; covers && i < rows; ++i) covers = all[i] == i;
  if (!covers)
    throw std::invalid_argument("cross_validate: fold plan does not cover the sample set");
}

double mean_fold_accuracy(const std::vector<FoldOutcome>& folds) {
  if (folds.empty()) return 0.0;
  double sum = 0.0;
  for (const auto& fold : folds) sum += fold.accuracy;
  return sum / static_cast<double>(folds.size());
}

/// Trains on the given rows and scores the fold, updating the pooled
/// confusion matrix.
FoldOutcome run_fold(const MatrixView& train_view,
                     std::span<const std::string> train_labels,
                     const FeatureMatrix& test_rows,
                     std::span<const std::size_t> test_indices,
                     std::span<const std::string> true_labels,
                     const std::map<std::string, std::size_t>& cls_index,
                     std::vector<std::vector<long>>& confusion,
                     const EvalOptions& options) {
  const MulticlassModel model = train_multiclass(
      train_view, train_labels, options.kernel, options.C, options.scheme, options.train);
  FoldOutcome outcome;
  outcome.test_indices.assign(test_indices.begin(), test_indices.end());
  long correct = 0;
  for (std::size_t t = 0; t < test_indices.size(); ++t) {
    const std::string pred = predict(model, test_rows.row(t));
    const std::string& truth = true_labels[test_indices[t]];
    outcome.predicted.push_back(pred);
    confusion[cls_index.at(truth)][cls_index.at(pred)] += 1;
    if (pred == truth) ++correct;
  }
  outcome.accuracy = test_indices.empty()
                         ? 0.0
                         : static_cast<double>(correct) / test_indices.size();
  return outcome;
}

}  // namespace

FoldPlan stratified_kfold(std::span<const std::string> labels, int k,
                          std::uint64_t seed) {
  const std::size_t n = labels.size();
  if (k < 2) throw std::invalid_argument("stratified_kfold: need at least 2 folds");
  if (static_cast<std::size_t>(k) > n)
    throw std::invalid_argument("stratified_kfold: more folds than samples (" +
                                std::to_string(k) + " > " + std::to_string(n) + ")");
  std::map<std::string, std::vector<std::size_t>> by_class;
  for (std::size_t idx : shuffled_indices(n, seed)) by_class[labels[idx]].push_back(idx);

  FoldPlan plan;
  plan.seed = seed;
  plan.folds.resize(static_cast<std::size_t>(k));
  std::size_t offset = 0;
  for (const auto& [cls, members] : by_class) {
    if (members.size() < static_cast<std::size_t>(k))
      plan.warnings.push_back("class '" + cls + "' has only " +
                              std::to_string(members.size()) + " samples for " +
                              std::to_string(k) + " folds");
    for (std::size_t i = 0; i < members.size(); ++i)
      plan.folds[(offset + i) % k].push_back(members[i]);
    offset = (offset + members.size()) % k;
  }
  for (auto& fold : plan.folds) std::sort(fold.begin(), fold.end());
  return plan;
}

CvResult cross_validate(const FeatureMatrix& matrix, const FoldPlan& plan,
                        const EvalOptions& options) {
  check_plan(plan, matrix.rows());
  CvResult result;
  result.classes = sorted_classes(matrix.labels);
  const auto cls_index = class_index(result.classes);
  result.confusion.assign(result.classes.size(),
                          std::vector<long>(result.classes.size(), 0));

  std::vector<char> in_test(matrix.rows(), 0);
  for (const auto& fold : plan.folds) {
    std::fill(in_test.begin(), in_test.end(), 0);
    for (std::size_t idx : fold) in_test[idx] = 1;

    std::vector<double> train_values;
    std::vector<std::string> train_labels;
    for (std::size_t r = 0; r < matrix.rows(); ++r) {
      if (in_test[r]) continue;
      const auto row = matrix.row(r);
      train_values.insert(train_values.end(), row.begin(), row.end());
      train_labels.push_back(matrix.labels[r]);
    }
    FeatureMatrix test_rows;
    test_rows.vocab = matrix.vocab;
    for (std::size_t idx : fold) {
      const auto row = matrix.row(idx);
      test_rows.keys.push_back(matrix.keys[idx]);
      test_rows.labels.push_back(matrix.labels[idx]);
      test_rows.values.insert(test_rows.values.end(), row.begin(), row.end());
    }
    const MatrixView train_view{train_values.data(), train_labels.size(), matrix.cols()};
    result.folds.push_back(run_fold(train_view, train_labels, test_rows, fold,
                                    matrix.labels, cls_index, result.confusion, options));
  }
  result.accuracy = mean_fold_accuracy(result.folds);
  return result;
}

CvResult cross_validate(std::span<const GriffProfile> profiles, const FoldPlan& plan,
                        const EvalOptions& options) {
  if (options.vocab_mode == VocabMode::corpus) {
    const Vocabulary vocab = build_vocabulary(profiles);
    return cross_validate(bow_matrix(profiles, vocab), plan, options);
  }

  check_plan(plan, profiles.size());
  std::vector<std::string> labels;
  labels.reserve(profiles.size());
  for (const auto& p : profiles) labels.push_back(p.source.player);

  CvResult result;
  result.classes = sorted_classes(labels);
  const auto cls_index = class_index(result.classes);
  result.confusion.assign(result.classes.size(),
                          std::vector<long>(result.classes.size(), 0));

  std::vector<char> in_test(profiles.size(), 0);
  for (const auto& fold : plan.folds) {
    std::fill(in_test.begin(), in_test.end(), 0);
    for (std::size_t idx : fold) in_test[idx] = 1;

    std::vector<GriffProfile> train_profiles;
    std::vector<GriffProfile> test_profiles;
    for (std::size_t r = 0; r < profiles.size(); ++r)
      if (!in_test[r]) train_profiles.push_back(profiles[r]);
    for (std::size_t idx : fold) test_profiles.push_back(profiles[idx]);

    const Vocabulary vocab = build_vocabulary(train_profiles);
    const FeatureMatrix train_m = bow_matrix(train_profiles, vocab);
    const FeatureMatrix test_m = bow_matrix(test_profiles, vocab);
    const MatrixView train_view{train_m.values.data(), train_m.rows(), train_m.cols()};
    result.folds.push_back(run_fold(train_view, train_m.labels, test_m, fold, labels,
                                    cls_index, result.confusion, options));
  }
  result.accuracy = mean_fold_accuracy(result.folds);
  return result;
}

CorpusSlice tokenize_corpus(const Dataset& dataset, const Representation& repr,
                            const ExtractOptions& extract,
                            const std::optional<std::string>& score) {
  if (score && !dataset.scores.contains(*score))
    throw DataError("unknown score '" + *score + "'");
  CorpusSlice slice;
  slice.repr = repr;
  for (const auto& [key, perf] : dataset.performances) {
    if (score && key.score != *score) continue;
    const auto& notes = dataset.scores.at(key.score);
    GriffProfile prof;
    if (repr.kind == Representation::Kind::intervals) {
      prof = profile(intervals_repr(perf, notes), repr, key);
    } else {
      GriffSequence seq =
          extract_griffs(perf, notes, extract.window_ms, extract.keep_duplicates);
      seq.source = key;
      prof = profile(seq, repr);
    }
    slice.keys.push_back(key);
    slice.labels.push_back(key.player);
    slice.profiles.push_back(std::move(prof));
  }
  return slice;
}

PlayerFocusedResult player_focused(const Dataset& dataset, const std::string& player,
                                   const std::optional<std::string>& score,
                                   const Representation& repr,
                                   const ExtractOptions& extract,
                                   const EvalOptions& options) {
  const CorpusSlice slice = tokenize_corpus(dataset, repr, extract, score);
  std::vector<std::size_t> targets;
  for (std::size_t i = 0; i < slice.labels.size(); ++i)
    if (slice.labels[i] == player) targets.push_back(i);
  if (targets.empty())
    throw DataError("player '" + player + "' has no performance in scope");

  PlayerFocusedResult result;
  result.player = player;
  for (std::size_t held_out : targets) {
    std::vector<GriffProfile> train_profiles;
    for (std::size_t r = 0; r < slice.profiles.size(); ++r)
      if (r != held_out) train_profiles.push_back(slice.profiles[r]);

    const Vocabulary vocab = options.vocab_mode == VocabMode::corpus
                                 ? build_vocabulary(slice.profiles)
                                 : build_vocabulary(train_profiles);
    const FeatureMatrix train_m = bow_matrix(train_profiles, vocab);
    const std::vector<GriffProfile> test_one{slice.profiles[held_out]};
    const FeatureMatrix test_m = bow_matrix(test_one, vocab);
    const MatrixView train_view{train_m.values.data(), train_m.rows(), train_m.cols()};
    const MulticlassModel model = train_multiclass(
        train_view, train_m.labels, options.kernel, options.C, options.scheme,
        options.train);

    PlayerRun run;
    run.test = slice.keys[held_out];
    run.predicted = predict(model, test_m.row(0));
    run.correct = run.predicted == player;
    result.runs.push_back(std::move(run));
  }
  long correct = 0;
  for (const auto& run : result.runs) correct += run.correct ? 1 : 0;
  result.accuracy = static_cast<double>(correct) / result.runs.size();
  return result;
}

SegmentScanResult segment_scan(const Dataset& dataset, const std::string& score,
                               std::span<const int> lengths,
                               const ExtractOptions& extract,
                               const EvalOptions& options) {
  const auto score_it = dataset.scores.find(score);
  if (score_it == dataset.scores.end()) throw DataError("unknown score '" + score + "'");
  const int score_length = static_cast<int>(score_it->second.size());
  for (int length : lengths)
    if (length < 1 || length > score_length)
      throw std::invalid_argument("segment length " + std::to_string(length) +
                                  " invalid for score of " +
                                  std::to_string(score_length) + " notes");

  const Representation repr = Representation::griff(1);
  std::vector<PerformanceKey> keys;
  std::vector<std::string> labels;
  std::vector<std::vector<GriffToken>> per_ordinal;  // one token per score note
  for (const auto& [key, perf] : dataset.performances) {
    if (key.score != score) continue;
    const GriffSequence seq =
        extract_griffs(perf, score_it->second, extract.window_ms, extract.keep_duplicates);
    keys.push_back(key);
    labels.push_back(key.player);
    per_ordinal.push_back(seq.tokens());
  }
  if (keys.empty()) throw DataError("score '" + score + "' has no performances");

  const FoldPlan plan = stratified_kfold(labels, options.folds, options.seed);

  SegmentScanResult result;
  result.score = score;
  result.lengths.assign(lengths.begin(), lengths.end());
  std::vector<double> pooled_sum(score_length, 0.0);
  std::vector<long> pooled_count(score_length, 0);
  std::vector<double> all_accuracies;

  for (int length : lengths) {
    std::vector<double> note_sum(score_length, 0.0);
    std::vector<long> note_count(score_length, 0);
    for (int start = 0; start + length <= score_length; ++start) {
      std::vector<GriffProfile> profiles;
      for (std::size_t p = 0; p < keys.size(); ++p) {
        const auto begin = per_ordinal[p].begin() + start;
        profiles.push_back(
            profile(std::vector<GriffToken>(begin, begin + length), repr, keys[p]));
      }
      const CvResult cv = cross_validate(profiles, plan, options);

      result.segments.push_back({start, length, cv.accuracy});
      all_accuracies.push_back(cv.accuracy);
      for (int o = start; o < start + length; ++o) {
        note_sum[o] += cv.accuracy;
        note_count[o] += 1;
        pooled_sum[o] += cv.accuracy;
        pooled_count[o] += 1;
      }
    }
    std::vector<double> means(score_length, 0.0);
    for (int o = 0; o < score_length; ++o)
      if (note_count[o] > 0) means[o] = note_sum[o] / note_count[o];
    result.note_means[length] = std::move(means);
  }

  result.pooled_note_means.assign(score_length, 0.0);
  for (int o = 0; o < score_length; ++o)
    if (pooled_count[o] > 0) result.pooled_note_means[o] = pooled_sum[o] / pooled_count[o];

  result.histogram.assign(result.histogram_bins, 0);
  for (double acc : all_accuracies) {
    const int bin = std::min(result.histogram_bins - 1,
                             static_cast<int>(acc * result.histogram_bins));
    result.histogram[bin] += 1;
  }
  result.skew = skewness(all_accuracies);
  return result;
}

namespace {

const ScoreNote& find_score_note(const Dataset& dataset, const std::string& score,
                                 const std::string& note_id) {
  const auto score_it = dataset.scores.find(score);
  if (score_it == dataset.scores.end()) throw DataError("unknown score '" + score + "'");
  for (const ScoreNote& note : score_it->second)
    if (note.id == note_id) return note;
  throw DataError("unknown score note '" + note_id + "' in score '" + score + "'");
}

/// Encoded griff at one ordinal for every performance of the score,
/// excluded tokens dropped; the paired player id rides along.
std::vector<std::pair<std::string, GriffToken>> tokens_at_note(
    const Dataset& dataset, const std::string& score, int ordinal,
    const ExtractOptions& extract) {
  const Representation repr = Representation::griff(1);
  std::vector<std::pair<std::string, GriffToken>> out;
  for (const auto& [key, perf] : dataset.performances) {
    if (key.score != score) continue;
    const GriffSequence seq = extract_griffs(perf, dataset.scores.at(score),
                                             extract.window_ms, extract.keep_duplicates);
    const GriffToken token = encode(seq.griffs[ordinal]);
    if (!excluded_token(token, repr)) out.emplace_back(key.player, token);
  }
  return out;
}

}  // namespace

NoteStats note_stats(const Dataset& dataset, const std::string& score,
                     const std::string& note_id, const ExtractOptions& extract,
                     std::optional<double> mean_accuracy) {
  const ScoreNote& note = find_score_note(dataset, score, note_id);
  NoteStats stats;
  stats.score = score;
  stats.note_id = note_id;
  stats.ordinal = note.ordinal;
  stats.pitch_name = midi_pitch_name(note.pitch);
  stats.mean_accuracy = mean_accuracy;

  std::set<GriffToken> types;
  for (const auto& [player, token] : tokens_at_note(dataset, score, note.ordinal, extract)) {
    stats.occurrences += 1;
    types.insert(token);
  }
  stats.types = static_cast<long>(types.size());
  stats.mean_usage = stats.types > 0
                         ? static_cast<double>(stats.occurrences) / stats.types
                         : 0.0;
  return stats;
}

DistributionTable griff_distribution(const Dataset& dataset, const std::string& score,
                                     const std::string& note_id,
                                     const ExtractOptions& extract) {
  const ScoreNote& note = find_score_note(dataset, score, note_id);
  DistributionTable table;
  table.score = score;
  table.note_id = note_id;

  std::set<std::string> players;
  for (const auto& [key, perf] : dataset.performances)
    if (key.score == score) players.insert(key.player);
  table.players.assign(players.begin(), players.end());

  std::map<GriffToken, std::map<std::string, long>> cells;
  for (const auto& [player, token] : tokens_at_note(dataset, score, note.ordinal, extract))
    cells[token][player] += 1;

  for (const auto& [token, by_player] : cells) {
    table.tokens.push_back(token);
    std::vector<long> row(table.players.size(), 0);
    for (std::size_t p = 0; p < table.players.size(); ++p) {
      const auto it = by_player.find(table.players[p]);
      if (it != by_player.end()) row[p] = it->second;
    }
    table.counts.push_back(std::move(row));
  }
  return table;
}

double skewness(std::span<const double> values) {
  const std::size_t n = values.size();
  if (n < 2) return 0.0;
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= static_cast<double>(n);
  double m2 = 0.0, m3 = 0.0;
  for (double v : values) {
    const double d = v - mean;
    m2 += d * d;
    m3 += d * d * d;
  }
  m2 /= static_cast<double>(n);
  m3 /= static_cast<double>(n);
  if (m2 <= 0.0) return 0.0;
  return m3 / std::pow(m2, 1.5);
}

}  // namespace continuo
