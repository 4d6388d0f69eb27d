#pragma once

#include <iosfwd>

namespace twophase {

/// Entry point of the `twophase` command. Returns the process exit code:
/// 0 success, 1 usage or configuration error, 2 numerical failure.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace twophase
