#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "gdl/collection/collection.hpp"

namespace gdl::cli {

enum ExitCode : int { kOk = 0, kVerifyFailed = 1, kUsage = 2, kIo = 3 };

// Entry point of the gdl tool; returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

// A generated directory (base.txt + script.txt), a .col file, a directory of
// documents, or a list of document files.
collection::Collection load_collection(const std::vector<std::string>& inputs);

// Pattern argument decoding: backslash escapes, or hex digits.
std::string decode_pattern(const std::string& arg, bool hex);

}  // namespace gdl::cli
