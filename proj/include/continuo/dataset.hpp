#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "continuo/types.hpp"

namespace continuo {

struct LoadResult {
  Dataset dataset;
  std::vector<std::string> warnings;
  /// (score, player) -> number of performances
  std::map<std::pair<std::string, std::string>, int> counts;
};

/// Loads a JSON manifest listing scores and performances:
///   { "scores": [ {"name", "notes": [{"id","ordinal","midi_pitch"}]} ],
///     "performances": [ {"score","player","take","midi_path","alignment_path"} ] }
/// Relative paths resolve against the manifest's directory. Performance
/// notes absent from an alignment file are recorded as insertions.
/// Throws ParseError/DataError naming the offending entry.
LoadResult load_dataset(const std::filesystem::path& manifest_path);

/// Same, from manifest text plus a base directory for relative paths.
LoadResult load_dataset_text(std::string_view manifest_json,
                             const std::filesystem::path& base_dir);

/// Structural checks shared by the loader and the synthetic generator:
/// consecutive ordinals, unique ids, alignments referencing known notes,
/// aligned notes and insertions partitioning each performance exactly.
void validate_dataset(const Dataset& dataset);

std::vector<std::uint8_t> read_file_bytes(const std::filesystem::path& path);
std::string read_file_text(const std::filesystem::path& path);

}  // namespace continuo
