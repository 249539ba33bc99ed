#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace bsn {

/// Failure categories shared by every module. The CLI maps `kParse` to exit
/// code 2 and everything else to exit code 3.
enum class ErrorKind {
  kPrecondition,
  kBaseMismatch,
  kNotAUnit,
  kNotCoprime,
  kNotInvertible,
  kNoMaximalRoot,
  kIdentityStabilizer,
  kUseKernelDescriptor,
  kEmptyInput,
  kLimitExceeded,
  kParse,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Malformed literal or word. `position` is a 0-based byte offset into the
/// parsed text.
class ParseError : public Error {
 public:
  ParseError(std::size_t position, std::string token, const std::string& what)
      : Error(ErrorKind::kParse, what),
        position_(position),
        token_(std::move(token)) {}

  std::size_t position() const noexcept { return position_; }
  const std::string& token() const noexcept { return token_; }

 private:
  std::size_t position_;
  std::string token_;
};

}  // namespace bsn
