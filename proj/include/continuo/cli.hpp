#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace continuo {

/// One run's settings, echoed into every report header.
struct RunConfig {
  std::string command;
  std::string manifest;
  std::string representation = "griff";
  int ngram = 0;  // overrides the representation's n when > 0
  double window_ms = 35.0;
  std::string kernel = "linear";
  int degree = 3;
  std::string gamma = "scale";
  double coef0 = 0.0;
  double C = 1.0;
  int folds = 5;
  std::uint64_t seed = 0;
  std::string scope = "per-score";
  std::vector<int> segment_lengths{1, 2, 4, 8};
  std::string out_dir = "out";
  std::string format = "csv";
  bool keep_duplicates = false;
  std::string vocab_mode = "corpus";
  std::string multiclass = "ovo";
  std::string player;
  std::string score;
  std::string note;
  std::string save_model;
};

/// Exit codes: 0 success, 1 usage error, 2 data error, 3 numerical failure.
int run_cli(int argc, const char* const* argv);

}  // namespace continuo
