#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace heckecells {

enum class ErrorKind {
  MalformedCartan,
  InfiniteGroup,
  UnknownElement,
  NonUnitriangular,
  MalformedDocument,
  ValidationFailed,
  ShapeMismatch,
  SizeMismatch,
  NotComparable,
  NotPositive,
  NoConvergence,
  NoMinimum,
  UnsupportedType,
  AmbiguousProjection,
  NotAPartition,
  CellMismatch,
};

std::string_view to_string(ErrorKind kind);

// Every failure raised by the library carries a kind so callers (the CLI in
// particular) can map it onto an exit code without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what),
        kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace heckecells
