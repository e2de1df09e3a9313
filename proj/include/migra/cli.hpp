#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace migra::cli {

enum ExitCode : int { kOk = 0, kInternal = 1, kParse = 2, kBadMarking = 3, kStateExplosion = 4 };

/// Runs the command line `args` (without the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace migra::cli
