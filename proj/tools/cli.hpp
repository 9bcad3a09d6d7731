#pragma once

#include <iosfwd>

namespace sphred::cli {

inline constexpr const char* kVersion = "0.1.0";

// Runs the command line tool; returns the process exit status.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace sphred::cli
