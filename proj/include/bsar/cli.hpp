// Command-line entry point: simulation, reconstruction, the mirror-artifact
// demonstration, the verification suites, and a quick selftest.  Exit code 0
// means every invoked check passed, 1 means a check failed, 2 means a usage
// or configuration error (reported as a one-line diagnostic on stderr).
#pragma once

#include <string>
#include <vector>

namespace bsar {

int run(int argc, const char* const* argv);

/// Same as run(argc, argv) but without the program name; used by in-process
/// tests.
int run(const std::vector<std::string>& args);

}  // namespace bsar
