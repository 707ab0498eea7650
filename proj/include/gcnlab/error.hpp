#pragma once

#include <stdexcept>
#include <string>

namespace gcnlab {

enum class ErrorCode {
  dimension_mismatch,
  invalid_argument,
  numerical_failure,
  undefined_scale,
  index_out_of_range,
  cap_exceeded,
  degenerate_measure,
  parse_error,
};

const char* to_string(ErrorCode code);

/// Library-wide exception. Every failure raised by gcnlab carries a code so
/// the CLI can map it to an exit status and a message without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace gcnlab
