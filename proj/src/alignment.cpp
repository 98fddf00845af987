#include "continuo/alignment.hpp"

#include <set>
#include <string>

#include "continuo/errors.hpp"

namespace continuo {

namespace {

std::string_view next_line(std::string_view& rest) {
  const std::size_t nl = rest.find('\n');
  std::string_view line = rest.substr(0, nl);
  rest = nl == std::string_view::npos ? std::string_view{} : rest.substr(nl + 1);
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  return line;
}

}  // namespace

Alignment parse_alignment(std::string_view text) {
  std::string_view rest = text;
  const std::string_view header = next_line(rest);
  if (header != "perf_note_id,score_note_id") {
    const std::size_t comma = header.find(',');
    const std::string_view first = header.substr(0, comma);
    if (first != "perf_note_id")
      throw ParseError("alignment: unknown column '" + std::string(first) + "'");
    throw ParseError("alignment: unknown column '" +
                     std::string(comma == std::string_view::npos
                                     ? std::string_view{}
                                     : header.substr(comma + 1)) +
                     "'");
  }

  Alignment alignment;
  std::set<std::string, std::less<>> seen;
  int row = 1;
  while (!rest.empty()) {
    const std::string_view line = next_line(rest);
    ++row;
    if (line.empty()) continue;
    const std::size_t comma = line.find(',');
    if (comma == std::string_view::npos)
      throw ParseError("alignment: row " + std::to_string(row) + " has no separator");
    const std::string_view perf = line.substr(0, comma);
    const std::string_view score = line.substr(comma + 1);
    if (score.find(',') != std::string_view::npos)
      throw ParseError("alignment: row " + std::to_string(row) + " has extra columns");
    if (perf.empty())
      throw ParseError("alignment: row " + std::to_string(row) + " has empty perf_note_id");
    if (!seen.insert(std::string(perf)).second)
      throw ParseError("alignment: duplicate performance note '" + std::string(perf) +
                       "' (a note maps to at most one score note)");
    if (score.empty())
      alignment.insertions.emplace_back(perf);
    else
      alignment.pairs.emplace_back(std::string(perf), std::string(score));
  }
  return alignment;
}

}  // namespace continuo
