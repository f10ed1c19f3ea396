#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace nhres::cli {

inline constexpr int kExitPass = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kSchemaVersion = 1;

// subcommands: verify, sweep, indexes, susy, green; returns the process exit code
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace nhres::cli
