#include "continuo/dataset.hpp"

#include <fstream>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "continuo/alignment.hpp"
#include "continuo/errors.hpp"
#include "continuo/midi.hpp"
#include "json.hpp"

namespace continuo {

std::vector<std::uint8_t> read_file_bytes(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open file: " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::string read_file_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open file: " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void validate_dataset(const Dataset& dataset) {
  for (const auto& [name, notes] : dataset.scores) {
    std::set<std::string> ids;
    for (std::size_t i = 0; i < notes.size(); ++i) {
      if (notes[i].ordinal != static_cast<int>(i))
        throw DataError("score " + name + ": ordinals not consecutive at position " +
                        std::to_string(i));
      if (!ids.insert(notes[i].id).second)
        throw DataError("score " + name + ": duplicate score note id " + notes[i].id);
    }
  }
  for (const auto& [key, perf] : dataset.performances) {
    const std::string where = key.label();
    if (key.player.empty() || key.take.empty())
      throw DataError(where + ": empty player or take label");
    auto score_it = dataset.scores.find(key.score);
    if (score_it == dataset.scores.end())
      throw DataError(where + ": unknown score " + key.score);
    std::unordered_set<std::string> score_ids;
    for (const ScoreNote& n : score_it->second) score_ids.insert(n.id);

    std::unordered_set<std::string> note_ids;
    for (const PerformanceNote& n : perf.notes) {
      if (n.pitch < 0 || n.pitch > 127)
        throw DataError(where + ": pitch out of range for note " + n.note_id);
      if (n.offset_ms < n.onset_ms)
        throw DataError(where + ": offset before onset for note " + n.note_id);
      if (!note_ids.insert(n.note_id).second)
        throw DataError(where + ": duplicate performance note id " + n.note_id);
    }
    std::unordered_set<std::string> mentioned;
    for (const auto& [pid, sid] : perf.alignment.pairs) {
      if (!note_ids.count(pid))
        throw DataError(where + ": alignment references unknown performance note " + pid);
      if (!score_ids.count(sid))
        throw DataError(where + ": unknown score note " + sid);
      if (!mentioned.insert(pid).second)
        throw DataError(where + ": performance note " + pid + " aligned twice");
    }
    for (const std::string& pid : perf.alignment.insertions) {
      if (!note_ids.count(pid))
        throw DataError(where + ": insertion references unknown performance note " + pid);
      if (!mentioned.insert(pid).second)
        throw DataError(where + ": performance note " + pid + " both aligned and inserted");
    }
    if (mentioned.size() != note_ids.size())
      throw DataError(where + ": alignment does not cover every performance note");
  }
}

namespace {

using nlohmann::json;

const json& require(const json& obj, const char* field, const std::string& where) {
  auto it = obj.find(field);
  if (it == obj.end())
    throw ParseError("manifest: missing field '" + std::string(field) + "' in " + where);
  return *it;
}

}  // namespace

LoadResult load_dataset_text(std::string_view manifest_json,
                             const std::filesystem::path& base_dir) {
  json manifest;
  try {
    manifest = json::parse(manifest_json);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("manifest: ") + e.what());
  }

  LoadResult result;
  Dataset& dataset = result.dataset;

  for (const json& score : require(manifest, "scores", "manifest root")) {
    const std::string name = require(score, "name", "score entry");
    if (dataset.scores.count(name))
      throw DataError("manifest: duplicate score name " + name);
    std::vector<ScoreNote> notes;
    for (const json& note : require(score, "notes", "score " + name)) {
      ScoreNote n;
      n.id = require(note, "id", "score " + name + " note");
      n.ordinal = require(note, "ordinal", "score " + name + " note " + n.id);
      n.pitch = require(note, "midi_pitch", "score " + name + " note " + n.id);
      notes.push_back(std::move(n));
    }
    dataset.scores.emplace(name, std::move(notes));
  }

  for (const json& entry : require(manifest, "performances", "manifest root")) {
    PerformanceKey key;
    key.score = require(entry, "score", "performance entry");
    key.player = require(entry, "player", "performance entry");
    key.take = require(entry, "take", "performance entry");
    const std::string where = key.label();
    if (dataset.performances.count(key))
      throw DataError("manifest: duplicate performance label " + where);
    if (!dataset.scores.count(key.score))
      throw DataError("manifest: performance " + where + " references unknown score " +
                      key.score);

    const std::string midi_path = require(entry, "midi_path", where);
    const std::string alignment_path = require(entry, "alignment_path", where);

    Performance perf;
    try {
      MidiParseResult midi = parse_midi(read_file_bytes(base_dir / midi_path));
      perf.notes = std::move(midi.notes);
      for (std::string& w : midi.warnings)
        result.warnings.push_back(where + ": " + std::move(w));
      perf.alignment = parse_alignment(read_file_text(base_dir / alignment_path));
    } catch (const ParseError& e) {
      throw ParseError(where + ": " + e.what());
    } catch (const DataError& e) {
      throw DataError(where + ": " + e.what());
    }

    // Notes the alignment file does not mention become insertions, so that
    // aligned notes and insertions always partition the performance.
    std::unordered_set<std::string> mentioned;
    for (const auto& [pid, sid] : perf.alignment.pairs) mentioned.insert(pid);
    for (const std::string& pid : perf.alignment.insertions) mentioned.insert(pid);
    for (const PerformanceNote& n : perf.notes)
      if (!mentioned.count(n.note_id)) perf.alignment.insertions.push_back(n.note_id);

    result.counts[{key.score, key.player}] += 1;
    dataset.performances.emplace(std::move(key), std::move(perf));
  }

  validate_dataset(dataset);
  return result;
}

LoadResult load_dataset(const std::filesystem::path& manifest_path) {
  return load_dataset_text(read_file_text(manifest_path),
                           manifest_path.has_parent_path() ? manifest_path.parent_path()
                                                           : std::filesystem::path("."));
}

}  // namespace continuo
