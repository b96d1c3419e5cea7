#include "gbs/error.hpp"

namespace gbs {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::ValidationError: return "ValidationError";
    case ErrorCode::SingularMatrix: return "SingularMatrix";
    case ErrorCode::MalformedWord: return "MalformedWord";
    case ErrorCode::ResourceLimit: return "ResourceLimit";
    case ErrorCode::PrecisionExhausted: return "PrecisionExhausted";
    case ErrorCode::NotApplicable: return "NotApplicable";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::RadiusTooSmall: return "RadiusTooSmall";
    case ErrorCode::UnknownBuiltin: return "UnknownBuiltin";
    case ErrorCode::BadParams: return "BadParams";
  }
  return "Unknown";
}

}  // namespace gbs
