#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace pcdga {

// Exit codes: 0 success or verified, 1 violation found, 2 input error,
// 3 inconclusive-only result.
enum ExitCode { kExitOk = 0, kExitViolation = 1, kExitInput = 2, kExitInconclusive = 3 };

// args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pcdga
