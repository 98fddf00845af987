#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "continuo/griff.hpp"
#include "continuo/types.hpp"

namespace continuo {

/// Synthetic corpus with controllable per-player griff preferences. The
/// default palettes are drawn from a fixed canonical shape pool: the first
/// round(overlap * palette_size) shapes are shared by everyone, the rest
/// are unique per player.
struct SynthConfig {
  int players = 7;
  int takes = 5;
  int score_length = 40;
  int palette_size = 6;
  double overlap = 0.0;        // shared fraction of each palette, in [0,1]
  double jitter_ms = 0.0;      // onset noise std-dev
  double deletion_prob = 0.0;  // chance a score note gets no notes at all
  std::uint64_t seed = 0;
  std::string score_name = "synth";
  double window_ms = 35.0;  // spacing unit; realized gaps are 3x this
  /// Overrides the derived palettes when set; one list of canonical
  /// shapes per player.
  std::optional<std::vector<std::vector<Griff>>> palettes;
};

struct SynthCorpus {
  Dataset dataset;
  /// Intended token per (performance, score ordinal); "" marks a deletion.
  std::map<PerformanceKey, std::vector<GriffToken>> truth;
  SynthConfig config;
};

/// First `count` shapes of the fixed pool palettes are drawn from. Shapes
/// are canonical griffs; the pool never repeats one.
std::vector<Griff> shape_pool(std::size_t count);

/// Deterministic: the same config yields an identical corpus. Every
/// performance owns an rng derived from (seed, player, take), so
/// generation order cannot matter. Throws std::invalid_argument on an
/// invalid config.
SynthCorpus generate(const SynthConfig& config);

/// Writes real SMF files, alignment CSVs, and a manifest under dir;
/// returns the manifest path. Note ids are re-derived from the rounded
/// tick order so a re-parse assigns exactly the ids the CSVs use.
std::filesystem::path export_corpus(const SynthCorpus& corpus,
                                    const std::filesystem::path& dir);

std::string synth_config_json(const SynthConfig& config);
SynthConfig synth_config_from_json(std::string_view text);

}  // namespace continuo
