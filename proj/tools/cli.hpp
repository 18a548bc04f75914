#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace meshgnn::cli {

// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitRuntime = 1;
inline constexpr int kExitUsage = 2;

// Runs one command. `args` excludes the program name. Normal output goes to
// `out`, diagnostics and progress to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Parses `key = value` lines (`#` starts a comment) into `--key=value`
// tokens. Throws meshgnn::ConfigError on malformed lines.
std::vector<std::string> config_tokens(const std::string& text);

}  // namespace meshgnn::cli
