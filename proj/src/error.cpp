// SPDX-License-Identifier: Apache-2.0
#include "otfs/error.hpp"

namespace otfs {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidDimension: return "InvalidDimension";
    case ErrorCode::NonCriticalSampling: return "NonCriticalSampling";
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::AllZeroState: return "AllZeroState";
    case ErrorCode::UnsupportedOrder: return "UnsupportedOrder";
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::LagOutOfRange: return "LagOutOfRange";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::UnsupportedLength: return "UnsupportedLength";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::DomainMismatch: return "DomainMismatch";
    case ErrorCode::WindowSingular: return "WindowSingular";
    case ErrorCode::EmptySignal: return "EmptySignal";
    case ErrorCode::DelayOutOfRange: return "DelayOutOfRange";
    case ErrorCode::NonPositiveLatency: return "NonPositiveLatency";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::Io: return "Io";
    case ErrorCode::Parse: return "Parse";
  }
  return "Unknown";
}

}  // namespace otfs
