#include <algorithm>
#include <filesystem>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "continuo/cli.hpp"
#include "continuo/svm.hpp"
#include "continuo/synth.hpp"
#include "doctest.h"
#include "helpers.hpp"
#include "json.hpp"

using namespace continuo;
using testutil::TempDir;
using testutil::read_file;

namespace {

struct RunResult {
  int code = 0;
  std::string out;
};

/// Invokes the CLI in-process with stdout captured.
RunResult run(const std::vector<std::string>& args) {
  std::vector<const char*> argv = {"continuo"};
  for (const std::string& a : args) argv.push_back(a.c_str());
  std::ostringstream captured;
  std::streambuf* old = std::cout.rdbuf(captured.rdbuf());
  RunResult result;
  result.code = run_cli(static_cast<int>(argv.size()), argv.data());
  std::cout.rdbuf(old);
  result.out = captured.str();
  return result;
}

/// Exports a small synthetic corpus under dir and returns the manifest path.
std::string make_corpus(const TempDir& dir, const std::string& sub = "corpus") {
  const auto result = run({"synth", "--players", "3", "--takes", "3", "--length", "12",
                           "--palette-size", "3", "--seed", "5",
                           "--dir", (dir.path / sub).string()});
  REQUIRE(result.code == 0);
  const auto manifest = dir.path / sub / "manifest.json";
  REQUIRE(std::filesystem::exists(manifest));
  return manifest.string();
}

}  // namespace

TEST_CASE("synth writes a loadable corpus with its config and truth") {
  TempDir dir;
  const std::string manifest = make_corpus(dir);
  CHECK(std::filesystem::exists(dir.path / "corpus" / "config.json"));
  CHECK(std::filesystem::exists(dir.path / "corpus" / "truth.csv"));

  const SynthConfig config =
      synth_config_from_json(read_file(dir.path / "corpus" / "config.json"));
  CHECK(config.players == 3);
  CHECK(config.takes == 3);
  CHECK(config.score_length == 12);
  CHECK(config.seed == 5);
}

TEST_CASE("extract reports vocabulary sizes that match the generator") {
  TempDir dir;
  const std::string manifest = make_corpus(dir);
  const auto out = dir.path / "out";
  const auto result =
      run({"extract", "--manifest", manifest, "--out", out.string()});
  REQUIRE(result.code == 0);

  // Reconstruct the corpus in-process: same config, same tokens.
  SynthConfig config;
  config.players = 3;
  config.takes = 3;
  config.score_length = 12;
  config.palette_size = 3;
  config.seed = 5;
  const SynthCorpus corpus = generate(config);
  std::set<GriffToken> distinct;
  long instances = 0;
  for (const auto& [key, tokens] : corpus.truth) {
    for (const GriffToken& t : tokens) {
      REQUIRE_FALSE(t.empty());
      if (t != "0") distinct.insert(t);
      ++instances;
    }
  }

  std::string expected_vocab;
  for (const GriffToken& t : distinct) expected_vocab += t + "\n";
  CHECK(read_file(out / "vocab" / "synth_griff.txt") == expected_vocab);
  CHECK(read_file(out / "vocab" / "whole_griff.txt") == expected_vocab);

  const std::string summary = read_file(out / "extract_summary.csv");
  CHECK(summary.find("scope,griff_vocab,griff_tokens") != std::string::npos);
  const std::string expected_row =
      "synth," + std::to_string(distinct.size()) + "," + std::to_string(instances);
  CHECK(summary.find(expected_row) != std::string::npos);

  // One token file per performance, 12 lines each.
  for (const auto& [key, tokens] : corpus.truth) {
    const auto file = out / "tokens" / "griff" / (key.label() + ".txt");
    REQUIRE(std::filesystem::exists(file));
    const std::string text = read_file(file);
    CHECK(std::count(text.begin(), text.end(), '\n') == 12);
  }
}

TEST_CASE("classify output is byte-identical across reruns") {
  TempDir dir;
  const std::string manifest = make_corpus(dir);
  const auto out_a = (dir.path / "a").string();
  const auto out_b = (dir.path / "b").string();

  REQUIRE(run({"classify", "--manifest", manifest, "--out", out_a, "--folds", "3"}).code == 0);
  REQUIRE(run({"classify", "--manifest", manifest, "--out", out_b, "--folds", "3"}).code == 0);

  for (const char* name :
       {"classify_accuracy.csv", "classify_folds.csv", "classify_confusion.csv"}) {
    CAPTURE(name);
    const std::string a = read_file(dir.path / "a" / name);
    CHECK(a == read_file(dir.path / "b" / name));
    CHECK(a.find("# command: classify") != std::string::npos);
    CHECK(a.find("# inputs_fnv1a: ") != std::string::npos);
  }

  // Disjoint palettes classify perfectly; the accuracy table says so.
  const std::string accuracy = read_file(dir.path / "a" / "classify_accuracy.csv");
  CHECK(accuracy.find("scope,griff") != std::string::npos);
  CHECK(accuracy.find("\nwhole,1\n") != std::string::npos);
  CHECK(accuracy.find("\nsynth,1\n") != std::string::npos);
}

TEST_CASE("json output parses and carries the run header") {
  TempDir dir;
  const std::string manifest = make_corpus(dir);
  const auto out = dir.path / "out";
  REQUIRE(run({"classify", "--manifest", manifest, "--out", out.string(),
               "--format", "json", "--folds", "3"}).code == 0);

  const auto parsed =
      nlohmann::json::parse(read_file(out / "classify_accuracy.json"));
  CHECK(parsed.at("kind") == "classify-accuracy");
  CHECK(parsed.at("run").at("command") == "classify");
  CHECK(parsed.at("run").at("kernel") == "linear");
  CHECK(parsed.at("columns").is_array());
  CHECK(parsed.at("rows").is_array());
  CHECK(parsed.at("rows").size() >= 1);
}

TEST_CASE("classify can persist a model that deserializes") {
  TempDir dir;
  const std::string manifest = make_corpus(dir);
  const auto model_path = dir.path / "model.json";
  REQUIRE(run({"classify", "--manifest", manifest, "--out", (dir.path / "out").string(),
               "--folds", "3", "--save-model", model_path.string()}).code == 0);
  REQUIRE(std::filesystem::exists(model_path));
  CHECK_NOTHROW(deserialize_model(read_file(model_path)));
}

TEST_CASE("player, segments, and note commands produce their tables") {
  TempDir dir;
  const std::string manifest = make_corpus(dir);
  const auto out = dir.path / "out";

  SUBCASE("player") {
    REQUIRE(run({"player", "--manifest", manifest, "--out", out.string()}).code == 0);
    const std::string summary = read_file(out / "player_focused.csv");
    for (const char* player : {"P1", "P2", "P3"})
      CHECK(summary.find(player) != std::string::npos);
    CHECK(std::filesystem::exists(out / "player_runs.csv"));
  }
  SUBCASE("single player") {
    REQUIRE(run({"player", "--manifest", manifest, "--out", out.string(),
                 "--player", "P2"}).code == 0);
    const std::string summary = read_file(out / "player_focused.csv");
    CHECK(summary.find("P2") != std::string::npos);
    CHECK(summary.find("P3") == std::string::npos);
  }
  SUBCASE("segments") {
    REQUIRE(run({"segments", "--manifest", manifest, "--out", out.string(),
                 "--segment-lengths", "1", "--segment-lengths", "12",
                 "--folds", "3"}).code == 0);
    for (const char* name : {"segment_accuracy.csv", "segment_note_means.csv",
                             "segment_histogram.csv", "segment_stats.csv"})
      CHECK(std::filesystem::exists(out / name));
    const std::string stats = read_file(out / "segment_stats.csv");
    CHECK(stats.find("synth,13,") != std::string::npos);  // 12 + 1 windows
  }
  SUBCASE("note stats for every note, distribution for one") {
    REQUIRE(run({"note", "--manifest", manifest, "--out", out.string(),
                 "--score", "synth", "--folds", "3"}).code == 0);
    const std::string stats = read_file(out / "note_stats.csv");
    for (int i = 0; i < 12; ++i)
      CHECK(stats.find("n" + std::to_string(i) + ",") != std::string::npos);
    CHECK_FALSE(std::filesystem::exists(out / "note_distribution.csv"));

    REQUIRE(run({"note", "--manifest", manifest, "--out", out.string(),
                 "--score", "synth", "--note", "n3", "--folds", "3"}).code == 0);
    const std::string dist = read_file(out / "note_distribution.csv");
    CHECK(dist.find("token,P1,P2,P3") != std::string::npos);
  }
}

TEST_CASE("exit codes distinguish usage, data, and solver failures") {
  TempDir dir;
  SUBCASE("missing required flag") {
    CHECK(run({"classify"}).code == 1);
  }
  SUBCASE("unknown subcommand") {
    CHECK(run({"frobnicate"}).code == 1);
  }
  SUBCASE("nonexistent manifest") {
    CHECK(run({"classify", "--manifest", (dir.path / "nope.json").string()}).code == 2);
  }
  SUBCASE("malformed manifest") {
    testutil::write_file(dir.path / "bad.json", "{broken");
    CHECK(run({"extract", "--manifest", (dir.path / "bad.json").string()}).code == 2);
  }
  SUBCASE("bad gamma") {
    const std::string manifest = make_corpus(dir);
    CHECK(run({"classify", "--manifest", manifest, "--gamma", "-2"}).code == 1);
    CHECK(run({"classify", "--manifest", manifest, "--gamma", "huge"}).code == 1);
  }
  SUBCASE("unknown player is a data error") {
    const std::string manifest = make_corpus(dir);
    CHECK(run({"player", "--manifest", manifest, "--player", "nobody",
               "--out", (dir.path / "out").string()}).code == 2);
  }
  SUBCASE("segment length beyond the score is a usage error") {
    const std::string manifest = make_corpus(dir);
    CHECK(run({"segments", "--manifest", manifest, "--segment-lengths", "99",
               "--out", (dir.path / "out").string()}).code == 1);
  }
  SUBCASE("help exits cleanly") {
    CHECK(run({"--help"}).code == 0);
    CHECK(run({"--version"}).code == 0);
  }
}
