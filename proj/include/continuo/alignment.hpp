#pragma once

#include <string_view>

#include "continuo/types.hpp"

namespace continuo {

/// Parses the canonical alignment CSV: header `perf_note_id,score_note_id`,
/// one pair per row, empty second field = insertion, UTF-8, LF (CRLF is
/// tolerated). Throws ParseError on duplicate performance ids or unknown
/// columns.
Alignment parse_alignment(std::string_view text);

}  // namespace continuo
