#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace sysrisk {

/// Machine-readable failure classes shared by every layer. The service maps
/// them one-to-one onto ApiError codes and HTTP statuses.
enum class ErrorCode {
  Validation,
  NotFound,
  SimDiverged,
  DegenerateInput,
  Internal,
};

std::string_view to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message, std::string detail = {})
      : std::runtime_error(message), code_(code), detail_(std::move(detail)) {}

  ErrorCode code() const noexcept { return code_; }

  /// Offending field or key, empty when not applicable.
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorCode code_;
  std::string detail_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message,
                              std::string detail = {}) {
  throw Error(code, message, std::move(detail));
}

inline void require(bool ok, const std::string& message, std::string detail = {}) {
  if (!ok) fail(ErrorCode::Validation, message, std::move(detail));
}

}  // namespace sysrisk
