#pragma once

// Command-line front end. run_cli is the whole program minus process setup, so tests
// can drive it in-process.

#include <iosfwd>
#include <string>
#include <vector>

namespace bloch::cli {

inline constexpr const char* kVersion = "0.1.0";

enum Exit { ok = 0, inconclusive = 1, invalid = 2 };

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// FNV-1a over the canonical flag string.
std::string config_hash(const std::string& canonical);

}  // namespace bloch::cli
