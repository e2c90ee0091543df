#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace dsonc::cli {

inline constexpr int kExitSuccess = 0;
inline constexpr int kExitNotMember = 1;
inline constexpr int kExitError = 2;

// Runs one command line (without the program name). Results go to `out` as
// JSON {verdict, witnesses, diagnostics}; human-readable errors to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dsonc::cli
