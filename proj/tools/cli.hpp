#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "adccal/signalgen.hpp"

namespace adccal::cli {

/// Runs one adccal invocation. `args` excludes the program name. Reports go
/// to `out`, diagnostics to `err`. Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// "amp:freq[:phase]" terms separated by commas; phase is radians or the
/// words cos/sin. An empty string means no tones.
std::vector<ToneSpec> parse_tones(const std::string& text);

}  // namespace adccal::cli
