#pragma once

#include <iosfwd>

namespace quadcomp::cli {

enum ExitCode { kOk = 0, kInvalid = 2, kNotCovered = 3, kCertification = 4 };

/// Parses argv, runs one subcommand and writes JSON to `out`; errors go to `err`
/// as {"error": kind, "message": ...}.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace quadcomp::cli
