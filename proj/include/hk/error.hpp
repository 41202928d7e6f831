#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hk {

enum class ErrorCode {
  DimensionMismatch,
  IllDefined,
  NonZeroComposite,
  Category,
  Functoriality,
  ConditionSub,
  DanglingReference,
  Parse,
  Version,
  WrongKind,
  Io,
  CrossCheck,
  Unsupported,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace hk

namespace hk {

/// Outcome of a structural validation: either ok, or the first violation found.
struct Report {
  bool ok = true;
  std::string message;

  static Report pass() { return {}; }
  static Report fail(std::string why) { return {false, std::move(why)}; }
  explicit operator bool() const noexcept { return ok; }
};

}  // namespace hk
