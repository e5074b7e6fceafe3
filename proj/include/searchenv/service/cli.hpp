#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace searchenv {

/// `searchenv <subcommand> ...` with `args` excluding the program name.
/// Subcommands: serve, run, replay, validate, stats, split, corrupt, eval.
/// Returns the exit code: 0 on success, 1 when the command ran but found
/// a problem (e.g. violations), 2 for usage errors.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace searchenv
