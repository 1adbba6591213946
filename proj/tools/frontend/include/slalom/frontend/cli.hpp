#pragma once

namespace slalom::frontend {

/// Exit status: 0 on success (possibly with masked nodes), 1 for invalid
/// arguments, 2 for a numerical failure.
int run_cli(int argc, char** argv);

}  // namespace slalom::frontend
