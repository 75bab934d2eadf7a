#pragma once

#include <stdexcept>
#include <string>

namespace bwcc {

enum class ErrorCode {
  Dimension = 1,
  InvalidMass,
  SingularDistance,
  InvalidMultiplier,
  Degenerate,
  Integrity,
  UnsupportedClass,
  NormalizationRequired,
  Configuration,
};

const char* to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace bwcc
