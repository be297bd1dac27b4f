#pragma once

#include <iosfwd>
#include <string>
#include <vector>

// Command implementations behind the `alibi` binary, callable in-process so
// the CLI suite can drive them without spawning.

namespace alibi::cli {

// Parses and dispatches one invocation. Returns the process exit status:
// zero on success, non-zero after printing an error to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace alibi::cli
