#pragma once

#include <stdexcept>
#include <string>

namespace lagdpw {

enum class ErrorKind {
  SingularLoop,
  OutsideBigCell,
  IllConditioned,
  NotVacuum,
  PoleAtOrigin,
  PoleOnPath,
  TruncationOverflow,
  DomainError,
  SeedTooLarge,
  NotRadialPIII,
  GridTooCoarse,
  SchemaError,
  InvalidArgument,
};

const char* to_string(ErrorKind kind);

// Every failure raised by the library carries a machine-readable kind so the
// CLI can map it to an exit code and an error document.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, std::string(to_string(kind)) + ": " + what);
}

}  // namespace lagdpw
