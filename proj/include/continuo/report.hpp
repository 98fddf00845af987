#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace continuo {

/// Rolling FNV-1a 64 checksum.
struct Fnv1a {
  std::uint64_t state = 14695981039346656037ull;

  void update(std::span<const std::uint8_t> bytes);
  void update(std::string_view text);
  std::string hex() const;  // 16 lowercase hex digits
};

std::string fnv1a_hex(std::string_view text);

/// Key/value pairs echoed at the top of every report.
using HeaderItems = std::vector<std::pair<std::string, std::string>>;

/// Deterministic decimal rendering, up to `digits` significant digits.
std::string format_double(double value, int digits = 6);

/// Rectangular plot-ready payload; all cells pre-rendered as text.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
};

/// '#'-prefixed key/value lines, a CSV header row, then data rows. Cells
/// containing commas, quotes, or newlines are quoted.
std::string render_csv(const Table& table, const HeaderItems& header);

/// {"kind", "run", "columns", "rows"}; rows carry the same strings as the
/// CSV cells.
std::string render_json(std::string_view kind, const Table& table,
                        const HeaderItems& header);

/// Writes text, creating parent directories first.
void write_text_file(const std::filesystem::path& path, std::string_view text);

}  // namespace continuo
