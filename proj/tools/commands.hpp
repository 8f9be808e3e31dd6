#pragma once

#include <string>
#include <vector>

namespace lidartwin::cli {

inline constexpr const char* kToolVersion = "1.0.0";
inline constexpr int kSceneSchemaVersion = 1;

// Exit codes: 0 success, 1 I/O error, 2 validation error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitIo = 1;
inline constexpr int kExitValidation = 2;

// Parses and dispatches one invocation (argv without the program name).
// All human output goes to stderr; machine output goes to files, or to
// stdout where --stdout is supported.
int run_cli(const std::vector<std::string>& args);

}  // namespace lidartwin::cli
