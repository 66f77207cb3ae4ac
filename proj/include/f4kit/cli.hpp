#pragma once

// The f4kit command line: JSON in, JSON out.
//
//   f4kit classify   (--in FILE | --json TEXT)          rank report (G2 or F4)
//   f4kit witt       (--in FILE | --json TEXT)          Witt decomposition
//   f4kit kernel     (--in FILE | --json TEXT)          F4 kernel descriptor
//   f4kit excellence --ext FIELD (--in | --json)        excellence report
//   f4kit equiv      (--in | --json) {"a": form, "b": form}
//   f4kit verify     [--suite NAME] [--seed N]          property suites
//
// Exit codes: 0 success, 2 invalid input, 3 unsupported case, 4 verification
// failure. Failures print {"error": {"code", "message"}} on standard output.

#include <iosfwd>

#include "f4kit/error.hpp"

namespace f4kit::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalidInput = 2;
inline constexpr int kExitUnsupported = 3;
inline constexpr int kExitVerification = 4;

int exit_code_for(ErrorCode code);

/// Runs one job. Reports go to `out` (or to --out), usage text to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace f4kit::cli
