#pragma once

#include <stdexcept>
#include <string>

namespace vsdepth {

enum class Errc {
  ElementOutOfRange,
  UniverseOutOfRange,
  UniverseMismatch,
  SizeOutOfRange,
  Overflow,
  NotAnInterval,
  EmptySet,
  DensityOutOfRange,
  BadParameters,
  BottomTooSmall,
  TopTooSmall,
  DepthMismatch,
  MatchingFailed,
  DegreePreconditionViolated,
  RefusesUnverified,
  Parse,
  Internal,
};

const char* errc_name(Errc code) noexcept;

/// Every failure raised by the library carries one of the codes above so
/// tests and the CLI can branch on the kind rather than the message.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace vsdepth
