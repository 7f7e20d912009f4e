#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "weingarten/odetrace.hpp"

namespace weingarten::cli {

/// Reads `key = value` lines into TraceOptions. Blank lines and lines
/// starting with '#' are skipped; unknown keys and bad values throw
/// Error(InvalidArgument).
TraceOptions parse_config(std::istream& source, TraceOptions base = {});

/// Entry point behind the executable. args excludes the program name.
/// Returns 0 on success, 1 on verification or run failure, 2 on bad flags.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace weingarten::cli
