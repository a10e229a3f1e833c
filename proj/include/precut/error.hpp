#pragma once

#include <stdexcept>
#include <string>

namespace precut {

enum class ErrorCode {
    DimensionMismatch,
    NotPromap,
    NotPartialMap,
    UnknownLabel,
    GroundMismatch,
    CapExceeded,
    BadDecomposition,
    NotExhaustive,
    NotNested,
    NotBreakPoint,
    FrameViolation,
    NotARefinement,
    NotTotalPreorder,
    UnknownInstance,
    IrreducibilityNotVerified,
    NotIntertwined,
    NonIntegral,
    InvalidInput,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(error_code_name(code)) + ": " + what), code_(code) {}
    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

}  // namespace precut
