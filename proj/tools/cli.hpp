#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace quadorder::cli {

// Exit codes.
constexpr int kCertified = 0;
constexpr int kRefuted = 1;
constexpr int kInconclusive = 2;
constexpr int kUsage = 64;
constexpr int kDataError = 65;

/// Runs one command line (without the program name). Results go to `out`,
/// diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace quadorder::cli
