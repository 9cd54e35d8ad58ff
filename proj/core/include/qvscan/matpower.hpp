#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "qvscan/network.hpp"

namespace qvscan {

/// Thrown for malformed case text. `line` is 1-based; 0 when the location is
/// not line-oriented (e.g. a field path inside a structured document).
struct ParseError : std::runtime_error {
  int line = 0;
  ParseError(const std::string& message, int line_no = 0)
      : std::runtime_error(line_no > 0 ? "line " + std::to_string(line_no) + ": " + message : message),
        line(line_no) {}
};

/// Parses the version-2 matrix-style case format: `baseMVA` plus `bus`,
/// `gen` and `branch` tables. Honored columns are bus 1-13 (zone in column
/// 11), gen 1-8 and branch 1-13; anything beyond is ignored with a warning.
/// `%` starts a comment. Zones are declared on the fly from the bus table;
/// a zero baseKV column (common in older data sets) is replaced by 1.0 kV
/// with a warning so that kV filters stay well defined.
///
/// Throws ParseError with a line number for syntax errors, references to
/// undeclared buses, zero-impedance branches, and a missing slack bus.
Network parse_standard_case(std::string_view text, std::vector<std::string>* warnings = nullptr);

}  // namespace qvscan
