#pragma once

#include <stdexcept>
#include <string>

namespace tagtime {

/// Failure categories surfaced to callers. The CLI maps each one to a
/// distinct process exit code.
enum class ErrorKind {
  kConfig,
  kEmptyDataset,
  kFormat,
  kNoProfile,
  kIo,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

const char* to_string(ErrorKind kind) noexcept;

}  // namespace tagtime
