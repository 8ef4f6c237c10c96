#include "stategeom/error.hpp"

namespace stategeom {

std::string_view error_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::NotPSD: return "NotPSD";
    case ErrorCode::ZeroFunctional: return "ZeroFunctional";
    case ErrorCode::TraceError: return "TraceError";
    case ErrorCode::NotUnitary: return "NotUnitary";
    case ErrorCode::ZeroWeight: return "ZeroWeight";
    case ErrorCode::RankMismatch: return "RankMismatch";
    case ErrorCode::NotTracial: return "NotTracial";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::ConfigError: return "ConfigError";
    case ErrorCode::Singular: return "Singular";
    case ErrorCode::NumericallySingular: return "NumericallySingular";
  }
  return "Unknown";
}

bool is_numerical(ErrorCode code) noexcept {
  return code == ErrorCode::Singular || code == ErrorCode::NumericallySingular;
}

}  // namespace stategeom
