#include "continuo/report.hpp"

#include <cstdio>
#include <fstream>

#include "continuo/errors.hpp"
#include "json.hpp"

namespace continuo {

namespace {
constexpr std::uint64_t kFnvPrime = 1099511628211ull;
}

void Fnv1a::update(std::span<const std::uint8_t> bytes) {
  for (std::uint8_t b : bytes) {
    state ^= b;
    state *= kFnvPrime;
  }
}

void Fnv1a::update(std::string_view text) {
  update(std::span<const std::uint8_t>(
      reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
}

std::string Fnv1a::hex() const {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(state));
  return buf;
}

std::string fnv1a_hex(std::string_view text) {
  Fnv1a sum;
  sum.update(text);
  return sum.hex();
}

std::string format_double(double value, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, value);
  return buf;
}

namespace {

std::string csv_cell(const std::string& value) {
  if (value.find_first_of(",\"\n") == std::string::npos) return value;
  std::string quoted = "\"";
  for (char c : value) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  quoted += '"';
  return quoted;
}

}  // namespace

std::string render_csv(const Table& table, const HeaderItems& header) {
  std::string out;
  for (const auto& [key, value] : header) out += "# " + key + ": " + value + "\n";
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    if (c > 0) out += ',';
    out += csv_cell(table.columns[c]);
  }
  out += '\n';
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c > 0) out += ',';
      out += csv_cell(row[c]);
    }
    out += '\n';
  }
  return out;
}

std::string render_json(std::string_view kind, const Table& table,
                        const HeaderItems& header) {
  nlohmann::json j;
  j["kind"] = kind;
  nlohmann::json run = nlohmann::json::object();
  for (const auto& [key, value] : header) run[key] = value;
  j["run"] = std::move(run);
  j["columns"] = table.columns;
  j["rows"] = table.rows;
  return j.dump(2) + "\n";
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write file: " + path.string());
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw DataError("short write: " + path.string());
}

}  // namespace continuo
