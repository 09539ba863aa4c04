#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace brick::cli {

// Exit codes: 0 success, 1 computational mismatch or guard/limit hit,
// 2 usage error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitMismatch = 1;
inline constexpr int kExitUsage = 2;

// Runs the brick command line; `args` excludes the program name. Streams are
// injected so tests can capture output.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int run(int argc, const char* const* argv);

}  // namespace brick::cli
