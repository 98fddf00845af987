#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "continuo/errors.hpp"
#include "continuo/eval.hpp"
#include "continuo/synth.hpp"
#include "doctest.h"

using namespace continuo;

namespace {

std::vector<std::string> balanced_labels(int classes, int per_class) {
  std::vector<std::string> labels;
  for (int c = 0; c < classes; ++c)
    for (int s = 0; s < per_class; ++s) labels.push_back("P" + std::to_string(c));
  return labels;
}

KernelSpec linear() { return {KernelKind::linear, 3, 1.0, 0.0}; }

}  // namespace

TEST_CASE("stratified folds split every class evenly when possible") {
  const auto labels = balanced_labels(7, 5);
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const FoldPlan plan = stratified_kfold(labels, 5, seed);
    REQUIRE(plan.folds.size() == 5);
    CHECK(plan.warnings.empty());
    std::set<std::size_t> seen;
    for (const auto& fold : plan.folds) {
      CHECK(fold.size() == 7);
      CHECK(std::is_sorted(fold.begin(), fold.end()));
      std::map<std::string, int> per_class;
      for (const std::size_t i : fold) {
        per_class[labels[i]] += 1;
        CHECK(seen.insert(i).second);
      }
      for (const auto& [cls, count] : per_class) CHECK(count == 1);
    }
    CHECK(seen.size() == labels.size());
  }
}

TEST_CASE("unbalanced classes differ by at most one across folds") {
  std::vector<std::string> labels = balanced_labels(3, 7);  // 7 % 3 != 0
  const FoldPlan plan = stratified_kfold(labels, 3, 9);
  std::map<std::string, std::vector<int>> counts;
  for (const auto& fold : plan.folds) {
    std::map<std::string, int> per_class;
    for (const std::size_t i : fold) per_class[labels[i]] += 1;
    for (const auto& [cls, count] : per_class) counts[cls].push_back(count);
  }
  for (const auto& [cls, per_fold] : counts) {
    const auto [lo, hi] = std::minmax_element(per_fold.begin(), per_fold.end());
    CHECK(*hi - *lo <= 1);
  }
}

TEST_CASE("a class smaller than k is spread with a warning") {
  std::vector<std::string> labels = balanced_labels(2, 5);
  labels.push_back("rare");
  const FoldPlan plan = stratified_kfold(labels, 5, 1);
  REQUIRE(plan.warnings.size() == 1);
  CHECK(plan.warnings[0].find("rare") != std::string::npos);
}

TEST_CASE("fold plans are deterministic in the seed") {
  const auto labels = balanced_labels(4, 6);
  const FoldPlan a = stratified_kfold(labels, 4, 123);
  const FoldPlan b = stratified_kfold(labels, 4, 123);
  CHECK(a.folds == b.folds);
  const FoldPlan c = stratified_kfold(labels, 4, 124);
  CHECK(a.folds != c.folds);
}

TEST_CASE("k equal to n gives singleton folds") {
  const auto labels = balanced_labels(2, 2);
  const FoldPlan plan = stratified_kfold(labels, 4, 0);
  for (const auto& fold : plan.folds) CHECK(fold.size() == 1);
}

TEST_CASE("invalid fold counts throw") {
  const auto labels = balanced_labels(2, 3);
  CHECK_THROWS_AS(stratified_kfold(labels, 1, 0), std::invalid_argument);
  CHECK_THROWS_AS(stratified_kfold(labels, 7, 0), std::invalid_argument);
}

namespace {

/// Feature matrix with one indicative column per class plus noise-free
/// counts, trivially separable.
FeatureMatrix separable_matrix(int classes, int per_class) {
  FeatureMatrix m;
  m.vocab.repr = Representation::griff();
  for (int c = 0; c < classes; ++c) m.vocab.tokens.push_back("tok" + std::to_string(c));
  for (std::size_t i = 0; i < m.vocab.tokens.size(); ++i)
    m.vocab.index[m.vocab.tokens[i]] = i;
  for (int c = 0; c < classes; ++c) {
    for (int s = 0; s < per_class; ++s) {
      m.keys.push_back({"s1", "P" + std::to_string(c), "t" + std::to_string(s)});
      m.labels.push_back("P" + std::to_string(c));
      for (int col = 0; col < classes; ++col)
        m.values.push_back(col == c ? 5.0 + s : 0.0);
    }
  }
  return m;
}

}  // namespace

TEST_CASE("cross_validate is perfect on separable features") {
  const FeatureMatrix m = separable_matrix(4, 5);
  const FoldPlan plan = stratified_kfold(m.labels, 5, 3);
  EvalOptions options;
  options.kernel = linear();
  const CvResult result = cross_validate(m, plan, options);
  CHECK(result.accuracy == doctest::Approx(1.0));
  REQUIRE(result.classes.size() == 4);
  // Perfect confusion matrix: 5 on the diagonal, 0 elsewhere.
  for (std::size_t r = 0; r < 4; ++r)
    for (std::size_t c = 0; c < 4; ++c)
      CHECK(result.confusion[r][c] == (r == c ? 5 : 0));
}

TEST_CASE("confusion rows always sum to the class counts") {
  FeatureMatrix m = separable_matrix(3, 6);
  // Scramble the values so predictions are wrong in unknown ways.
  std::mt19937_64 rng(77);
  for (double& v : m.values) v = static_cast<double>(rng() % 7);
  const FoldPlan plan = stratified_kfold(m.labels, 3, 5);
  EvalOptions options;
  options.kernel = linear();
  options.folds = 3;
  const CvResult result = cross_validate(m, plan, options);
  for (std::size_t r = 0; r < result.classes.size(); ++r) {
    const long sum = std::accumulate(result.confusion[r].begin(),
                                     result.confusion[r].end(), 0L);
    CHECK(sum == 6);
  }
  CHECK(result.accuracy >= 0.0);
  CHECK(result.accuracy <= 1.0);
  // Mean fold accuracy must match the fold records.
  double mean = 0.0;
  for (const FoldOutcome& fold : result.folds) mean += fold.accuracy;
  CHECK(result.accuracy == doctest::Approx(mean / result.folds.size()));
}

TEST_CASE("plans must cover the matrix rows exactly") {
  const FeatureMatrix m = separable_matrix(2, 4);
  FoldPlan plan = stratified_kfold(m.labels, 2, 0);
  EvalOptions options;
  options.kernel = linear();
  SUBCASE("dropped index") {
    plan.folds[0].pop_back();
    CHECK_THROWS_AS(cross_validate(m, plan, options), std::invalid_argument);
  }
  SUBCASE("duplicated index") {
    plan.folds[0].push_back(plan.folds[1].back());
    CHECK_THROWS_AS(cross_validate(m, plan, options), std::invalid_argument);
  }
}

TEST_CASE("synthetic corpus with disjoint palettes cross-validates perfectly") {
  SynthConfig config;
  config.players = 4;
  config.takes = 5;
  config.score_length = 30;
  config.palette_size = 5;
  config.overlap = 0.0;
  config.seed = 2;
  const SynthCorpus corpus = generate(config);

  const CorpusSlice slice =
      tokenize_corpus(corpus.dataset, Representation::griff(), {});
  REQUIRE(slice.profiles.size() == 20);
  const FoldPlan plan = stratified_kfold(slice.labels, 5, 0);
  EvalOptions options;
  options.kernel = linear();

  SUBCASE("corpus vocabulary") {
    CHECK(cross_validate(slice.profiles, plan, options).accuracy ==
          doctest::Approx(1.0));
  }
  SUBCASE("per-fold vocabulary") {
    options.vocab_mode = VocabMode::per_fold;
    CHECK(cross_validate(slice.profiles, plan, options).accuracy ==
          doctest::Approx(1.0));
  }
}

TEST_CASE("identical palettes leave nothing to classify") {
  SynthConfig config;
  config.players = 4;
  config.takes = 5;
  config.score_length = 30;
  config.palette_size = 5;
  config.overlap = 1.0;

  // Accuracy should hover around chance (0.25); averaged over seeds it must
  // stay far below the separable regime.
  double total = 0.0;
  int runs = 0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    config.seed = seed;
    const CorpusSlice s =
        tokenize_corpus(generate(config).dataset, Representation::griff(), {});
    const FoldPlan plan = stratified_kfold(s.labels, 5, seed);
    EvalOptions options;
    options.kernel = linear();
    total += cross_validate(s.profiles, plan, options).accuracy;
    ++runs;
  }
  CHECK(total / runs < 0.45);
}

TEST_CASE("player_focused runs one test per performance of the player") {
  SynthConfig config;
  config.players = 3;
  config.takes = 4;
  config.score_length = 25;
  config.palette_size = 4;
  config.seed = 5;
  const SynthCorpus corpus = generate(config);

  EvalOptions options;
  options.kernel = linear();
  const PlayerFocusedResult result = player_focused(
      corpus.dataset, "P2", std::string("synth"), Representation::griff(), {}, options);
  CHECK(result.player == "P2");
  REQUIRE(result.runs.size() == 4);
  for (const PlayerRun& run : result.runs) {
    CHECK(run.test.player == "P2");
    CHECK(run.correct == (run.predicted == "P2"));
  }
  // Disjoint palettes: every run should come back correct.
  CHECK(result.accuracy == doctest::Approx(1.0));

  SUBCASE("unknown player") {
    CHECK_THROWS_WITH_AS(player_focused(corpus.dataset, "nobody", std::string("synth"),
                                        Representation::griff(), {}, options),
                         doctest::Contains("nobody"), DataError);
  }
  SUBCASE("whole-dataset scope accepts a missing score") {
    const PlayerFocusedResult whole = player_focused(
        corpus.dataset, "P1", std::nullopt, Representation::griff(), {}, options);
    CHECK(whole.runs.size() == 4);
  }
}

TEST_CASE("segment scan covers every window and matches full-length CV") {
  SynthConfig config;
  config.players = 3;
  config.takes = 5;
  config.score_length = 8;
  config.palette_size = 4;
  config.seed = 11;
  const SynthCorpus corpus = generate(config);

  EvalOptions options;
  options.kernel = linear();
  const std::vector<int> lengths = {1, 2, 8};
  const SegmentScanResult scan =
      segment_scan(corpus.dataset, "synth", lengths, {}, options);

  CHECK(scan.score == "synth");
  CHECK(scan.lengths == std::vector<int>{1, 2, 8});
  // 8 windows of length 1, 7 of length 2, 1 of length 8.
  CHECK(scan.segments.size() == 16);
  long histogram_total = 0;
  for (const long c : scan.histogram) histogram_total += c;
  CHECK(histogram_total == 16);
  CHECK(scan.histogram.size() == 20);

  for (const SegmentResult& seg : scan.segments) {
    CHECK(seg.accuracy >= 0.0);
    CHECK(seg.accuracy <= 1.0);
    CHECK(seg.start + seg.length <= 8);
  }

  SUBCASE("the full-score window equals plain cross-validation") {
    const auto full = std::find_if(scan.segments.begin(), scan.segments.end(),
                                   [](const SegmentResult& s) { return s.length == 8; });
    REQUIRE(full != scan.segments.end());
    const CorpusSlice slice =
        tokenize_corpus(corpus.dataset, Representation::griff(), {}, std::string("synth"));
    const FoldPlan plan = stratified_kfold(slice.labels, options.folds, options.seed);
    const CvResult cv = cross_validate(slice.profiles, plan, options);
    CHECK(full->accuracy == doctest::Approx(cv.accuracy));
  }

  SUBCASE("length-1 note means equal the length-1 segment accuracies") {
    const auto& means = scan.note_means.at(1);
    REQUIRE(means.size() == 8);
    for (const SegmentResult& seg : scan.segments) {
      if (seg.length != 1) continue;
      CHECK(means[static_cast<std::size_t>(seg.start)] == doctest::Approx(seg.accuracy));
    }
  }

  SUBCASE("pooled note means average every window containing the note") {
    REQUIRE(scan.pooled_note_means.size() == 8);
    for (int ordinal = 0; ordinal < 8; ++ordinal) {
      double sum = 0.0;
      int count = 0;
      for (const SegmentResult& seg : scan.segments) {
        if (seg.start <= ordinal && ordinal < seg.start + seg.length) {
          sum += seg.accuracy;
          ++count;
        }
      }
      REQUIRE(count > 0);
      CHECK(scan.pooled_note_means[static_cast<std::size_t>(ordinal)] ==
            doctest::Approx(sum / count));
    }
  }

  SUBCASE("skew matches a direct computation") {
    std::vector<double> accs;
    for (const SegmentResult& seg : scan.segments) accs.push_back(seg.accuracy);
    CHECK(scan.skew == doctest::Approx(skewness(accs)));
  }
}

TEST_CASE("segment lengths must fit the score") {
  SynthConfig config;
  config.players = 2;
  config.takes = 2;
  config.score_length = 4;
  config.palette_size = 2;
  const SynthCorpus corpus = generate(config);
  EvalOptions options;
  options.kernel = linear();
  options.folds = 2;
  const std::vector<int> bad = {5};
  CHECK_THROWS_AS(segment_scan(corpus.dataset, "synth", bad, {}, options),
                  std::invalid_argument);
  const std::vector<int> zero = {0};
  CHECK_THROWS_AS(segment_scan(corpus.dataset, "synth", zero, {}, options),
                  std::invalid_argument);
}

TEST_CASE("note_stats and griff_distribution agree") {
  SynthConfig config;
  config.players = 3;
  config.takes = 4;
  config.score_length = 6;
  config.palette_size = 3;
  config.seed = 13;
  const SynthCorpus corpus = generate(config);

  for (int ordinal = 0; ordinal < 6; ++ordinal) {
    const std::string note_id = "n" + std::to_string(ordinal);
    const NoteStats stats = note_stats(corpus.dataset, "synth", note_id, {});
    const DistributionTable table =
        griff_distribution(corpus.dataset, "synth", note_id, {});

    CHECK(stats.ordinal == ordinal);
    CHECK(stats.score == "synth");
    CHECK_FALSE(stats.mean_accuracy.has_value());

    long table_total = 0;
    for (const auto& row : table.counts)
      table_total += std::accumulate(row.begin(), row.end(), 0L);
    CHECK(stats.occurrences == table_total);
    CHECK(stats.types == static_cast<long>(table.tokens.size()));
    if (stats.types > 0)
      CHECK(stats.mean_usage ==
            doctest::Approx(static_cast<double>(stats.occurrences) / stats.types));
    CHECK(std::is_sorted(table.players.begin(), table.players.end()));
    CHECK(std::is_sorted(table.tokens.begin(), table.tokens.end()));
  }

  SUBCASE("unknown note") {
    CHECK_THROWS_WITH_AS(note_stats(corpus.dataset, "synth", "n99", {}),
                         doctest::Contains("n99"), DataError);
    CHECK_THROWS_AS(note_stats(corpus.dataset, "wrong", "n0", {}), DataError);
  }
}

TEST_CASE("skewness matches hand-computed values") {
  // {0, 0, 0, 1}: mean 0.25, m2 = 0.1875, m3 = 0.09375 -> g1 = 1.1547.
  const std::vector<double> right = {0.0, 0.0, 0.0, 1.0};
  CHECK(skewness(right) == doctest::Approx(2.0 / std::sqrt(3.0)));
  // Mirrored data flips the sign.
  const std::vector<double> left = {1.0, 1.0, 1.0, 0.0};
  CHECK(skewness(left) == doctest::Approx(-2.0 / std::sqrt(3.0)));
  // Symmetric data has zero skew.
  const std::vector<double> sym = {1.0, 2.0, 3.0};
  CHECK(skewness(sym) == doctest::Approx(0.0));
  // Degenerate inputs.
  CHECK(skewness(std::vector<double>{}) == 0.0);
  CHECK(skewness(std::vector<double>{5.0}) == 0.0);
  CHECK(skewness(std::vector<double>{2.0, 2.0, 2.0}) == 0.0);
}
