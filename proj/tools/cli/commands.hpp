#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qflda::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitIo = 2;

/// Environment variable consulted for the default --seed.
inline constexpr const char* kSeedEnv = "QFLDA_SEED";

/// Entry point for `qflda <gen|fit|eval|inspect|reproduce> ...`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Convenience for tests: args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace qflda::cli
