#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace stategeom {

/// Error taxonomy shared by every module. The names returned by
/// error_name() are stable and appear verbatim on the CLI's stderr.
enum class ErrorCode {
  NotHermitian,
  NotPSD,
  ZeroFunctional,
  TraceError,
  NotUnitary,
  ZeroWeight,
  RankMismatch,
  NotTracial,
  DomainError,
  ParseError,
  ConfigError,
  Singular,
  NumericallySingular,
};

std::string_view error_name(ErrorCode code) noexcept;

/// True for failures caused by floating-point conditioning rather than by
/// malformed input.
bool is_numerical(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace stategeom
