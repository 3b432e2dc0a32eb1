// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace otfs {

enum class ErrorCode {
  InvalidDimension,
  NonCriticalSampling,
  NonFinite,
  AllZeroState,
  UnsupportedOrder,
  EmptyInput,
  LagOutOfRange,
  LengthMismatch,
  UnsupportedLength,
  DimensionMismatch,
  DomainMismatch,
  WindowSingular,
  EmptySignal,
  DelayOutOfRange,
  NonPositiveLatency,
  InvalidArgument,
  Io,
  Parse,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace otfs
