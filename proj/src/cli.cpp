#include "continuo/cli.hpp"

#include <cctype>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "continuo/dataset.hpp"
#include "continuo/errors.hpp"
#include "continuo/eval.hpp"
#include "continuo/features.hpp"
#include "continuo/griff.hpp"
#include "continuo/report.hpp"
#include "continuo/svm.hpp"
#include "continuo/synth.hpp"
#include "continuo/version.hpp"
#include "json.hpp"

namespace continuo {

namespace {

void warn(const std::vector<std::string>& warnings) {
  for (const std::string& w : warnings) std::cerr << "warning: " << w << '\n';
}

std::string safe_name(const std::string& name) {
  std::string out = name;
  for (char& c : out)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '.' && c != '_' && c != '-')
      c = '_';
  return out;
}

KernelSpec kernel_from(const RunConfig& config) {
  KernelSpec spec;
  spec.kind = kernel_kind_from_name(config.kernel);
  spec.degree = config.degree;
  spec.coef0 = config.coef0;
  if (config.gamma != "scale") {
    std::size_t used = 0;
    double value = 0.0;
    try {
      value = std::stod(config.gamma, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != config.gamma.size() || value <= 0.0)
      throw std::invalid_argument("--gamma must be 'scale' or a positive number");
    spec.gamma = value;
  }
  return spec;
}

EvalOptions eval_from(const RunConfig& config) {
  EvalOptions options;
  options.kernel = kernel_from(config);
  options.C = config.C;
  options.folds = config.folds;
  options.seed = config.seed;
  options.scheme =
      config.multiclass == "ovr" ? MulticlassScheme::ovr : MulticlassScheme::ovo;
  options.vocab_mode =
      config.vocab_mode == "per-fold" ? VocabMode::per_fold : VocabMode::corpus;
  return options;
}

ExtractOptions extract_from(const RunConfig& config) {
  if (config.window_ms <= 0.0)
    throw std::invalid_argument("--window-ms must be positive");
  return {config.window_ms, config.keep_duplicates};
}

std::vector<Representation> representations_from(const RunConfig& config) {
  if (config.ngram > 0) return {Representation::griff(config.ngram)};
  if (config.representation == "all")
    return {Representation::intervals(), Representation::griff(1),
            Representation::griff(2), Representation::griff(3)};
  return {Representation::from_tag(config.representation)};
}

HeaderItems input_checksums(const std::filesystem::path& manifest_path) {
  const std::string manifest_text = read_file_text(manifest_path);
  Fnv1a inputs;
  inputs.update(manifest_text);
  const nlohmann::json manifest = nlohmann::json::parse(manifest_text);
  if (manifest.contains("performances")) {
    for (const nlohmann::json& perf : manifest.at("performances")) {
      for (const char* field : {"midi_path", "alignment_path"}) {
        if (!perf.contains(field)) continue;
        const auto path =
            manifest_path.parent_path() / perf.at(field).get<std::string>();
        const auto bytes = read_file_bytes(path);
        inputs.update(std::span<const std::uint8_t>(bytes.data(), bytes.size()));
      }
    }
  }
  return {{"manifest_fnv1a", fnv1a_hex(manifest_text)}, {"inputs_fnv1a", inputs.hex()}};
}

HeaderItems header_items(const RunConfig& config, const HeaderItems& checksums) {
  HeaderItems items;
  items.emplace_back("version", kVersion);
  items.emplace_back("command", config.command);
  items.emplace_back("manifest", config.manifest);
  items.emplace_back("representation", config.representation);
  if (config.ngram > 0) items.emplace_back("ngram", std::to_string(config.ngram));
  items.emplace_back("window_ms", format_double(config.window_ms));
  items.emplace_back("kernel", config.kernel);
  items.emplace_back("degree", std::to_string(config.degree));
  items.emplace_back("gamma", config.gamma);
  items.emplace_back("coef0", format_double(config.coef0));
  items.emplace_back("C", format_double(config.C));
  items.emplace_back("folds", std::to_string(config.folds));
  items.emplace_back("seed", std::to_string(config.seed));
  items.emplace_back("scope", config.scope);
  std::string lengths;
  for (int length : config.segment_lengths) {
    if (!lengths.empty()) lengths += ' ';
    lengths += std::to_string(length);
  }
  items.emplace_back("segment_lengths", lengths);
  items.emplace_back("format", config.format);
  items.emplace_back("keep_duplicates", config.keep_duplicates ? "true" : "false");
  items.emplace_back("vocab_mode", config.vocab_mode);
  items.emplace_back("multiclass", config.multiclass);
  items.insert(items.end(), checksums.begin(), checksums.end());
  return items;
}

void emit(const RunConfig& config, const HeaderItems& header, const std::string& name,
          const std::string& kind, const Table& table) {
  const std::filesystem::path dir(config.out_dir);
  std::filesystem::path path;
  std::string text;
  if (config.format == "json") {
    path = dir / (name + ".json");
    text = render_json(kind, table, header);
  } else {
    path = dir / (name + ".csv");
    text = render_csv(table, header);
  }
  write_text_file(path, text);
  std::cout << "wrote " << path.string() << '\n';
}

int cmd_extract(const RunConfig& config) {
  const LoadResult loaded = load_dataset(config.manifest);
  warn(loaded.warnings);
  const Dataset& dataset = loaded.dataset;
  const HeaderItems header = header_items(config, input_checksums(config.manifest));
  const auto reprs = representations_from(config);
  const ExtractOptions extract = extract_from(config);
  const std::filesystem::path out(config.out_dir);

  // Non-empty griff instances per scope (bass-only realizations included;
  // only deletions are filtered).
  std::map<std::string, long> tokens_by_score;
  long tokens_whole = 0;
  for (const auto& entry : dataset.performances) {
    const GriffSequence seq =
        extract_griffs(entry.second, dataset.scores.at(entry.first.score),
                       extract.window_ms, extract.keep_duplicates);
    const long count = static_cast<long>(make_ngrams(seq, 1).size());
    tokens_by_score[entry.first.score] += count;
    tokens_whole += count;
  }

  for (const Representation& repr : reprs) {
    for (const auto& [key, perf] : dataset.performances) {
      const auto& score_notes = dataset.scores.at(key.score);
      std::vector<GriffToken> stream;
      if (repr.kind == Representation::Kind::intervals) {
        stream = intervals_repr(perf, score_notes);
      } else {
        const GriffSequence seq =
            extract_griffs(perf, score_notes, extract.window_ms, extract.keep_duplicates);
        stream = make_ngrams(seq, repr.n);
      }
      std::string text;
      for (const GriffToken& token : stream) text += token + "\n";
      write_text_file(out / "tokens" / repr.tag() / (safe_name(key.label()) + ".txt"),
                      text);
    }
  }

  Table summary;
  summary.columns = {"scope"};
  for (const Representation& repr : reprs) summary.columns.push_back(repr.tag() + "_vocab");
  summary.columns.push_back("griff_tokens");

  std::vector<std::optional<std::string>> scopes;
  for (const auto& entry : dataset.scores) scopes.emplace_back(entry.first);
  scopes.emplace_back(std::nullopt);
  for (const auto& scope : scopes) {
    const std::string scope_name = scope ? *scope : "whole";
    std::vector<std::string> row{scope_name};
    for (const Representation& repr : reprs) {
      const CorpusSlice slice = tokenize_corpus(dataset, repr, extract, scope);
      const Vocabulary vocab = build_vocabulary(slice.profiles);
      row.push_back(std::to_string(vocab.size()));
      std::ostringstream text;
      write_vocabulary(vocab, text);
      write_text_file(out / "vocab" / (safe_name(scope_name) + "_" + repr.tag() + ".txt"),
                      text.str());
    }
    row.push_back(std::to_string(scope ? tokens_by_score[*scope] : tokens_whole));
    summary.rows.push_back(std::move(row));
  }
  emit(config, header, "extract_summary", "extract-summary", summary);
  return 0;
}

int cmd_classify(const RunConfig& config) {
  const LoadResult loaded = load_dataset(config.manifest);
  warn(loaded.warnings);
  const Dataset& dataset = loaded.dataset;
  const HeaderItems header = header_items(config, input_checksums(config.manifest));
  const auto reprs = representations_from(config);
  const ExtractOptions extract = extract_from(config);
  const EvalOptions options = eval_from(config);

  std::vector<std::optional<std::string>> scopes;
  if (config.scope != "whole-dataset")
    for (const auto& entry : dataset.scores) scopes.emplace_back(entry.first);
  scopes.emplace_back(std::nullopt);

  Table accuracy;
  accuracy.columns = {"scope"};
  for (const Representation& repr : reprs) accuracy.columns.push_back(repr.tag());
  Table folds;
  folds.columns = {"scope", "representation", "fold", "size", "accuracy"};
  Table confusion;
  confusion.columns = {"scope", "representation", "true_player", "predicted_player",
                       "count"};

  for (const auto& scope : scopes) {
    const std::string scope_name = scope ? *scope : "whole";
    std::vector<std::string> row{scope_name};
    for (const Representation& repr : reprs) {
      const CorpusSlice slice = tokenize_corpus(dataset, repr, extract, scope);
      const FoldPlan plan = stratified_kfold(slice.labels, options.folds, options.seed);
      warn(plan.warnings);
      const CvResult cv = cross_validate(slice.profiles, plan, options);
      row.push_back(format_double(cv.accuracy, 4));
      for (std::size_t f = 0; f < cv.folds.size(); ++f)
        folds.rows.push_back({scope_name, repr.tag(), std::to_string(f),
                              std::to_string(cv.folds[f].test_indices.size()),
                              format_double(cv.folds[f].accuracy, 4)});
      for (std::size_t a = 0; a < cv.classes.size(); ++a)
        for (std::size_t b = 0; b < cv.classes.size(); ++b)
          if (cv.confusion[a][b] != 0)
            confusion.rows.push_back({scope_name, repr.tag(), cv.classes[a],
                                      cv.classes[b], std::to_string(cv.confusion[a][b])});
    }
    accuracy.rows.push_back(std::move(row));
  }
  emit(config, header, "classify_accuracy", "classify-accuracy", accuracy);
  emit(config, header, "classify_folds", "classify-folds", folds);
  emit(config, header, "classify_confusion", "classify-confusion", confusion);

  if (!config.save_model.empty()) {
    const CorpusSlice slice = tokenize_corpus(dataset, reprs.front(), extract);
    const Vocabulary vocab = build_vocabulary(slice.profiles);
    const FeatureMatrix matrix = bow_matrix(slice.profiles, vocab);
    const MatrixView view{matrix.values.data(), matrix.rows(), matrix.cols()};
    const MulticlassModel model = train_multiclass(
        view, matrix.labels, options.kernel, options.C, options.scheme, options.train);
    const auto path = std::filesystem::path(config.out_dir) / config.save_model;
    write_text_file(path, serialize_model(model) + "\n");
    std::cout << "wrote " << path.string() << '\n';
  }
  return 0;
}

int cmd_player(const RunConfig& config) {
  const LoadResult loaded = load_dataset(config.manifest);
  warn(loaded.warnings);
  const Dataset& dataset = loaded.dataset;
  const HeaderItems header = header_items(config, input_checksums(config.manifest));
  const Representation repr = representations_from(config).front();
  const ExtractOptions extract = extract_from(config);
  const EvalOptions options = eval_from(config);

  std::set<std::string> all_players;
  for (const auto& entry : dataset.performances) all_players.insert(entry.first.player);
  if (!config.player.empty() && !all_players.contains(config.player))
    throw DataError("unknown player '" + config.player + "'");
  std::vector<std::string> players;
  if (config.player.empty()) players.assign(all_players.begin(), all_players.end());
  else players.push_back(config.player);

  Table summary;
  summary.columns = {"player", "scope", "runs", "correct", "accuracy"};
  Table detail;
  detail.columns = {"player", "score", "take", "predicted", "correct"};

  const auto append_runs = [&detail](const PlayerFocusedResult& result) {
    for (const PlayerRun& run : result.runs)
      detail.rows.push_back({result.player, run.test.score, run.test.take, run.predicted,
                             run.correct ? "1" : "0"});
  };
  const auto count_correct = [](const PlayerFocusedResult& result) {
    long correct = 0;
    for (const PlayerRun& run : result.runs) correct += run.correct ? 1 : 0;
    return correct;
  };

  for (const std::string& player : players) {
    if (config.scope == "whole-dataset") {
      const PlayerFocusedResult result =
          player_focused(dataset, player, std::nullopt, repr, extract, options);
      summary.rows.push_back({player, "whole", std::to_string(result.runs.size()),
                              std::to_string(count_correct(result)),
                              format_double(result.accuracy, 4)});
      append_runs(result);
      continue;
    }
    long total_runs = 0, total_correct = 0;
    for (const auto& score_entry : dataset.scores) {
      const std::string& score_name = score_entry.first;
      bool present = false;
      for (const auto& entry : dataset.performances)
        if (entry.first.score == score_name && entry.first.player == player) {
          present = true;
          break;
        }
      if (!present) continue;
      const PlayerFocusedResult result =
          player_focused(dataset, player, score_name, repr, extract, options);
      const long correct = count_correct(result);
      summary.rows.push_back({player, score_name, std::to_string(result.runs.size()),
                              std::to_string(correct), format_double(result.accuracy, 4)});
      append_runs(result);
      total_runs += static_cast<long>(result.runs.size());
      total_correct += correct;
    }
    if (total_runs > 0)
      summary.rows.push_back(
          {player, "all-scores", std::to_string(total_runs), std::to_string(total_correct),
           format_double(static_cast<double>(total_correct) / total_runs, 4)});
  }
  emit(config, header, "player_focused", "player-focused", summary);
  emit(config, header, "player_runs", "player-runs", detail);
  return 0;
}

int cmd_segments(const RunConfig& config) {
  const LoadResult loaded = load_dataset(config.manifest);
  warn(loaded.warnings);
  const Dataset& dataset = loaded.dataset;
  const HeaderItems header = header_items(config, input_checksums(config.manifest));
  const ExtractOptions extract = extract_from(config);
  const EvalOptions options = eval_from(config);

  std::vector<std::string> scores;
  if (config.score.empty())
    for (const auto& entry : dataset.scores) scores.push_back(entry.first);
  else
    scores.push_back(config.score);

  Table segments;
  segments.columns = {"score", "length", "start", "accuracy"};
  Table means;
  means.columns = {"score", "length", "ordinal", "note_id", "mean_accuracy"};
  Table histogram;
  histogram.columns = {"score", "bin_start", "bin_end", "count"};
  Table stats;
  stats.columns = {"score", "segments", "skewness"};

  for (const std::string& score : scores) {
    const SegmentScanResult scan =
        segment_scan(dataset, score, config.segment_lengths, extract, options);
    const auto& score_notes = dataset.scores.at(score);
    for (const SegmentResult& seg : scan.segments)
      segments.rows.push_back({score, std::to_string(seg.length),
                               std::to_string(seg.start), format_double(seg.accuracy, 4)});
    for (const auto& [length, per_note] : scan.note_means)
      for (std::size_t o = 0; o < per_note.size(); ++o)
        means.rows.push_back({score, std::to_string(length), std::to_string(o),
                              score_notes[o].id, format_double(per_note[o], 4)});
    for (std::size_t o = 0; o < scan.pooled_note_means.size(); ++o)
      means.rows.push_back({score, "all", std::to_string(o), score_notes[o].id,
                            format_double(scan.pooled_note_means[o], 4)});
    const double width = 1.0 / scan.histogram_bins;
    for (std::size_t b = 0; b < scan.histogram.size(); ++b)
      histogram.rows.push_back({score, format_double(b * width, 4),
                                format_double((b + 1) * width, 4),
                                std::to_string(scan.histogram[b])});
    stats.rows.push_back({score, std::to_string(scan.segments.size()),
                          format_double(scan.skew, 4)});
  }
  emit(config, header, "segment_accuracy", "segment-accuracy", segments);
  emit(config, header, "segment_note_means", "segment-note-means", means);
  emit(config, header, "segment_histogram", "segment-histogram", histogram);
  emit(config, header, "segment_stats", "segment-stats", stats);
  return 0;
}

int cmd_note(const RunConfig& config) {
  const LoadResult loaded = load_dataset(config.manifest);
  warn(loaded.warnings);
  const Dataset& dataset = loaded.dataset;
  const HeaderItems header = header_items(config, input_checksums(config.manifest));
  const ExtractOptions extract = extract_from(config);
  const EvalOptions options = eval_from(config);

  const SegmentScanResult scan =
      segment_scan(dataset, config.score, config.segment_lengths, extract, options);
  const auto& score_notes = dataset.scores.at(config.score);

  std::vector<std::string> note_ids;
  if (config.note.empty())
    for (const ScoreNote& note : score_notes) note_ids.push_back(note.id);
  else
    note_ids.push_back(config.note);

  Table stats;
  stats.columns = {"score", "note_id", "ordinal", "pitch", "types",
                   "occurrences", "mean_usage", "mean_accuracy"};
  for (const std::string& note_id : note_ids) {
    NoteStats ns = note_stats(dataset, config.score, note_id, extract);
    ns.mean_accuracy = scan.pooled_note_means[ns.ordinal];
    stats.rows.push_back({ns.score, ns.note_id, std::to_string(ns.ordinal),
                          ns.pitch_name, std::to_string(ns.types),
                          std::to_string(ns.occurrences), format_double(ns.mean_usage, 4),
                          format_double(*ns.mean_accuracy, 4)});
  }
  emit(config, header, "note_stats", "note-stats", stats);

  if (!config.note.empty()) {
    const DistributionTable dist =
        griff_distribution(dataset, config.score, config.note, extract);
    Table table;
    table.columns = {"token"};
    for (const std::string& player : dist.players) table.columns.push_back(player);
    for (std::size_t t = 0; t < dist.tokens.size(); ++t) {
      std::vector<std::string> row{dist.tokens[t]};
      for (long count : dist.counts[t]) row.push_back(std::to_string(count));
      table.rows.push_back(std::move(row));
    }
    emit(config, header, "note_distribution", "note-distribution", table);
  }
  return 0;
}

int cmd_synth(SynthConfig config, const std::string& config_path,
              const std::string& dir) {
  if (!config_path.empty()) config = synth_config_from_json(read_file_text(config_path));
  const SynthCorpus corpus = generate(config);
  const std::filesystem::path manifest_path = export_corpus(corpus, dir);

  const std::string config_json = synth_config_json(corpus.config);
  write_text_file(std::filesystem::path(dir) / "config.json", config_json + "\n");

  HeaderItems header;
  header.emplace_back("version", kVersion);
  header.emplace_back("command", "synth");
  header.emplace_back("seed", std::to_string(corpus.config.seed));
  header.emplace_back("config_fnv1a", fnv1a_hex(config_json));
  Table truth;
  truth.columns = {"performance", "ordinal", "token"};
  for (const auto& [key, tokens] : corpus.truth)
    for (std::size_t o = 0; o < tokens.size(); ++o)
      truth.rows.push_back({key.label(), std::to_string(o), tokens[o]});
  write_text_file(std::filesystem::path(dir) / "truth.csv", render_csv(truth, header));

  std::cout << manifest_path.string() << '\n';
  return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  RunConfig config;
  SynthConfig synth_config;
  std::string synth_config_path;
  std::string synth_dir = "out/synth";

  CLI::App app{"griff tokens, bag-of-words features, and player classification "
               "for aligned continuo performances"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kVersion));

  const auto add_common = [&config](CLI::App* cmd) {
    cmd->add_option("--manifest", config.manifest, "dataset manifest (JSON)")->required();
    cmd->add_option("--representation", config.representation,
                    "intervals, griff, 2gram, 3gram, ..., or all");
    cmd->add_option("--ngram", config.ngram,
                    "griff n-gram order (overrides --representation)");
    cmd->add_option("--window-ms", config.window_ms, "onset grouping window");
    cmd->add_option("--kernel", config.kernel, "linear, poly, rbf, or sigmoid");
    cmd->add_option("--degree", config.degree, "poly kernel degree");
    cmd->add_option("--gamma", config.gamma, "'scale' or a positive number");
    cmd->add_option("--coef0", config.coef0, "poly/sigmoid offset");
    cmd->add_option("--C", config.C, "soft-margin penalty");
    cmd->add_option("--folds", config.folds, "cross-validation folds");
    cmd->add_option("--seed", config.seed, "shuffle seed");
    cmd->add_option("--scope", config.scope, "per-score or whole-dataset")
        ->check(CLI::IsMember({"per-score", "whole-dataset"}));
    cmd->add_option("--segment-lengths", config.segment_lengths,
                    "segment sizes in score notes");
    cmd->add_option("--out", config.out_dir, "output directory");
    cmd->add_option("--format", config.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_flag("--keep-duplicates", config.keep_duplicates,
                  "keep repeated intervals inside a vector");
    cmd->add_option("--vocab-mode", config.vocab_mode, "corpus or per-fold")
        ->check(CLI::IsMember({"corpus", "per-fold"}));
    cmd->add_option("--multiclass", config.multiclass, "ovo or ovr")
        ->check(CLI::IsMember({"ovo", "ovr"}));
  };

  CLI::App* extract_cmd =
      app.add_subcommand("extract", "write token files and a vocabulary summary");
  add_common(extract_cmd);
  CLI::App* classify_cmd =
      app.add_subcommand("classify", "cross-validated player classification");
  add_common(classify_cmd);
  classify_cmd->add_option("--save-model", config.save_model,
                           "also serialize the whole-dataset model to this file");
  CLI::App* player_cmd =
      app.add_subcommand("player", "leave-one-out accuracy per player");
  add_common(player_cmd);
  player_cmd->add_option("--player", config.player, "target player (default: all)");
  CLI::App* segments_cmd =
      app.add_subcommand("segments", "sliding-segment accuracy scan");
  add_common(segments_cmd);
  segments_cmd->add_option("--score", config.score, "score name (default: all)");
  CLI::App* note_cmd = app.add_subcommand("note", "per-note griff statistics");
  add_common(note_cmd);
  note_cmd->add_option("--score", config.score, "score name")->required();
  note_cmd->add_option("--note", config.note, "score note id (default: all notes)");

  CLI::App* synth_cmd =
      app.add_subcommand("synth", "generate and export a synthetic corpus");
  synth_cmd->add_option("--players", synth_config.players, "player count");
  synth_cmd->add_option("--takes", synth_config.takes, "takes per player");
  synth_cmd->add_option("--length", synth_config.score_length, "score length in notes");
  synth_cmd->add_option("--palette-size", synth_config.palette_size,
                        "griff shapes per player");
  synth_cmd->add_option("--overlap", synth_config.overlap,
                        "shared palette fraction in [0,1]");
  synth_cmd->add_option("--jitter-ms", synth_config.jitter_ms, "onset noise std-dev");
  synth_cmd->add_option("--deletion-prob", synth_config.deletion_prob,
                        "per-note deletion probability");
  synth_cmd->add_option("--seed", synth_config.seed, "corpus seed");
  synth_cmd->add_option("--score-name", synth_config.score_name, "generated score name");
  synth_cmd->add_option("--window-ms", synth_config.window_ms, "spacing unit");
  synth_cmd->add_option("--config", synth_config_path,
                        "JSON config (overrides the other flags)");
  synth_cmd->add_option("--dir", synth_dir, "export directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);  // --help / --version
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (extract_cmd->parsed()) {
      config.command = "extract";
      return cmd_extract(config);
    }
    if (classify_cmd->parsed()) {
      config.command = "classify";
      return cmd_classify(config);
    }
    if (player_cmd->parsed()) {
      config.command = "player";
      return cmd_player(config);
    }
    if (segments_cmd->parsed()) {
      config.command = "segments";
      return cmd_segments(config);
    }
    if (note_cmd->parsed()) {
      config.command = "note";
      return cmd_note(config);
    }
    if (synth_cmd->parsed()) return cmd_synth(synth_config, synth_config_path, synth_dir);
  } catch (const SolverError& e) {
    std::cerr << "numerical error: " << e.what() << '\n';
    return 3;
  } catch (const ParseError& e) {
    std::cerr << "data error: " << e.what() << '\n';
    return 2;
  } catch (const DataError& e) {
    std::cerr << "data error: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 1;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "data error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}

}  // namespace continuo
