#pragma once

#include <iosfwd>

namespace mcc {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 2;
inline constexpr int kExitInternal = 3;

/// Entry point of the `mcc` command line tool; writes documents to `out` (or
/// the --out file) and diagnostics to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace mcc
