#pragma once

#include <string>
#include <vector>

namespace hk {

struct CommandResult {
  int exit_code = 0;
  std::string out;
  std::string err;
};

namespace exit_code {
inline constexpr int kOk = 0;
inline constexpr int kValidation = 2;
inline constexpr int kWrongKind = 3;
inline constexpr int kIo = 4;
inline constexpr int kCrossCheck = 5;
}  // namespace exit_code

/// Runs one hk0 invocation; args excludes the program name.
CommandResult run(const std::vector<std::string>& args);

}  // namespace hk
