#pragma once

#include <iosfwd>

namespace hermpir::cli {

// Parses argv and runs one subcommand. Returns 0 iff every check passed,
// 1 when a check failed, 2 on usage or parameter errors.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace hermpir::cli
