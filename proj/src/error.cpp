#include "bwcc/error.hpp"

namespace bwcc {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::Dimension: return "dimension error";
    case ErrorCode::InvalidMass: return "invalid mass";
    case ErrorCode::SingularDistance: return "singular distance";
    case ErrorCode::InvalidMultiplier: return "invalid multiplier";
    case ErrorCode::Degenerate: return "degenerate configuration";
    case ErrorCode::Integrity: return "integrity error";
    case ErrorCode::UnsupportedClass: return "unsupported hull class";
    case ErrorCode::NormalizationRequired: return "normalization required";
    case ErrorCode::Configuration: return "configuration error";
  }
  return "unknown error";
}

}  // namespace bwcc
